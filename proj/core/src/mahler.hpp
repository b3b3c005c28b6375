#ifndef PCLAB_SRC_MAHLER_HPP
#define PCLAB_SRC_MAHLER_HPP

#include "pclab/cyclotomic.hpp"

namespace pclab::detail {

/// log |lead| + sum_i log max(1, |root_i|) of a squarefree integer polynomial,
/// certified to within +/- tol_abs (root enclosures are refined, with rising
/// working precision, until the certified interval is narrow enough).
double log_mahler(const IntPolynomial& p, double tol_abs);

}  // namespace pclab::detail

#endif
