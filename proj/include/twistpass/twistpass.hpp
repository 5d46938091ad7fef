#pragma once

#include "twistpass/bridge.hpp"
#include "twistpass/crossings.hpp"
#include "twistpass/dynamics.hpp"
#include "twistpass/io.hpp"
#include "twistpass/model.hpp"
#include "twistpass/oracles.hpp"
#include "twistpass/rk4.hpp"
#include "twistpass/svg_plot.hpp"
#include "twistpass/sweep.hpp"
#include "twistpass/version.hpp"
