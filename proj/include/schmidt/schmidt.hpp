#pragma once

// Umbrella header for the whole library.

#include <schmidt/attractor.hpp>
#include <schmidt/errors.hpp>
#include <schmidt/game.hpp>
#include <schmidt/geometry.hpp>
#include <schmidt/jsonl.hpp>
#include <schmidt/lab.hpp>
#include <schmidt/perfect_tree.hpp>
#include <schmidt/point.hpp>
#include <schmidt/rational.hpp>
#include <schmidt/scenario.hpp>
#include <schmidt/space.hpp>
#include <schmidt/strategies.hpp>
#include <schmidt/verify.hpp>
