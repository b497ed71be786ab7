#pragma once

#include "idde/analysis.hpp"
#include "idde/descriptor.hpp"
#include "idde/expansion.hpp"
#include "idde/fundamental.hpp"
#include "idde/hypotheses.hpp"
#include "idde/io.hpp"
#include "idde/mesh.hpp"
#include "idde/problem.hpp"
#include "idde/representation.hpp"
#include "idde/solution.hpp"
#include "idde/solve.hpp"
