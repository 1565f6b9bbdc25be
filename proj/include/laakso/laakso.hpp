#pragma once

#include "laakso/casimir.hpp"
#include "laakso/census.hpp"
#include "laakso/error.hpp"
#include "laakso/graph.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/numeric.hpp"
#include "laakso/plates.hpp"
#include "laakso/rational.hpp"
#include "laakso/spectrum.hpp"
#include "laakso/zeta.hpp"
