#pragma once

#include <anline/acceptance.hpp>
#include <anline/backend.hpp>
#include <anline/berkovich.hpp>
#include <anline/exact.hpp>
#include <anline/fixture.hpp>
#include <anline/huber.hpp>
#include <anline/literal.hpp>
#include <anline/plot.hpp>
#include <anline/polynomial.hpp>
#include <anline/random.hpp>
#include <anline/region.hpp>
#include <anline/rings.hpp>
#include <anline/sampler.hpp>
#include <anline/series.hpp>
