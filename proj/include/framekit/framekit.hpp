#pragma once

#include "framekit/aldroubi.hpp"
#include "framekit/constructions.hpp"
#include "framekit/errors.hpp"
#include "framekit/frame.hpp"
#include "framekit/io.hpp"
#include "framekit/linalg.hpp"
#include "framekit/perturbation.hpp"
#include "framekit/random.hpp"
#include "framekit/riesz.hpp"
