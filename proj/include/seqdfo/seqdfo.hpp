#pragma once

// Umbrella header.

#include "seqdfo/experiment.hpp"
#include "seqdfo/oracle.hpp"
#include "seqdfo/problems.hpp"
#include "seqdfo/profiles.hpp"
#include "seqdfo/rng.hpp"
#include "seqdfo/search.hpp"
#include "seqdfo/stats.hpp"
#include "seqdfo/testing.hpp"
#include "seqdfo/verify.hpp"
