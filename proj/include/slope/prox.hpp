#pragma once

#include "slope/norms.hpp"

namespace slope {

// argmin_x (1/2)||x - v||_2^2 + sum_j w_j x#_j, exact in one pass.
// Separates into sign recovery, a sorted difference, and an isotonic
// regression solved by block merging; the result inherits v's signs and
// its magnitude ordering.
Vector prox_sorted_l1(const Vector& v, const WeightSchedule& w);

// argmin_x (1/2)||x - v||_2^2 + t ||x||_1, componentwise shrinkage.
Vector soft_threshold(const Vector& v, double t);

}  // namespace slope
