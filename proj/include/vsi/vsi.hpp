#pragma once

#include "errors.hpp"
#include "random.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "dimvector.hpp"
#include "quiver.hpp"
#include "representation.hpp"
#include "presentation.hpp"
#include "decomposition.hpp"
#include "cluster.hpp"
#include "io.hpp"
