#ifndef GEKR_GEKR_HPP
#define GEKR_GEKR_HPP

#include "gekr/bounds.hpp"
#include "gekr/construct.hpp"
#include "gekr/core.hpp"
#include "gekr/exact.hpp"
#include "gekr/magnitude.hpp"
#include "gekr/optimize.hpp"
#include "gekr/report.hpp"
#include "gekr/verify.hpp"

#endif  // GEKR_GEKR_HPP
