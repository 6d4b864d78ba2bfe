// Runs the ten acceptance criteria and prints one line per criterion.

#include <anline/acceptance.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    anline::AcceptanceConfig cfg;
    cfg.fixture_dir = argc > 1 ? argv[1] : ANLINE_FIXTURE_DIR;
    cfg.workers = std::max(1u, std::thread::hardware_concurrency());
    try {
        const auto results = anline::run_acceptance(cfg, &std::cout);
        anline::write_summary(results, std::cout);
        for (const auto& r : results) {
            if (!r.pass) return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << '\n';
        return 1;
    }
}
