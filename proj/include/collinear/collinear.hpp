#ifndef COLLINEAR_COLLINEAR_HPP
#define COLLINEAR_COLLINEAR_HPP

#include "attractor.hpp"
#include "certify.hpp"
#include "connectivity.hpp"
#include "digits.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "polyroots.hpp"
#include "raster.hpp"

#endif  // COLLINEAR_COLLINEAR_HPP
