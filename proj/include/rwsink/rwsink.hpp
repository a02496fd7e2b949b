#pragma once

#include "rwsink/config.hpp"
#include "rwsink/dissemination.hpp"
#include "rwsink/dutycycle.hpp"
#include "rwsink/engine.hpp"
#include "rwsink/error.hpp"
#include "rwsink/experiments.hpp"
#include "rwsink/report.hpp"
#include "rwsink/rng.hpp"
#include "rwsink/sink.hpp"
#include "rwsink/topology.hpp"
