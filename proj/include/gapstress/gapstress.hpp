#ifndef GAPSTRESS_GAPSTRESS_HPP
#define GAPSTRESS_GAPSTRESS_HPP

#include "gapstress/errors.hpp"
#include "gapstress/tensor.hpp"
#include "gapstress/numerics.hpp"
#include "gapstress/bipolar_geometry.hpp"
#include "gapstress/singular_asymptotics.hpp"
#include "gapstress/ling_exact.hpp"

#endif  // GAPSTRESS_GAPSTRESS_HPP
