#pragma once

#include "holling/asymptotics.hpp"
#include "holling/config.hpp"
#include "holling/engine.hpp"
#include "holling/error.hpp"
#include "holling/experiment.hpp"
#include "holling/export.hpp"
#include "holling/interval.hpp"
#include "holling/model.hpp"
#include "holling/random.hpp"
#include "holling/stats.hpp"
