#pragma once

#include "rangewalk/lattice.hpp"
#include "rangewalk/walk.hpp"
#include "rangewalk/fraction.hpp"
#include "rangewalk/random.hpp"
#include "rangewalk/markov.hpp"
#include "rangewalk/zigzag.hpp"
#include "rangewalk/generators.hpp"
#include "rangewalk/trajectory_csv.hpp"
#include "rangewalk/config.hpp"
#include "rangewalk/trackers.hpp"
#include "rangewalk/checks.hpp"
#include "rangewalk/speed.hpp"
#include "rangewalk/experiments.hpp"
#include "rangewalk/report_json.hpp"
#include "rangewalk/verify.hpp"
