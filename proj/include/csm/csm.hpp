#pragma once

#include "csm/charclass.hpp"
#include "csm/chow.hpp"
#include "csm/error.hpp"
#include "csm/f4.hpp"
#include "csm/field.hpp"
#include "csm/groebner.hpp"
#include "csm/ideal_file.hpp"
#include "csm/ideal_ops.hpp"
#include "csm/polynomial.hpp"
#include "csm/probability.hpp"
#include "csm/projective_degrees.hpp"
#include "csm/ring.hpp"
#include "csm/rng.hpp"
