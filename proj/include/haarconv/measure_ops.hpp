#pragma once

#include <span>
#include <vector>

#include "haarconv/group.hpp"
#include "haarconv/homogeneous.hpp"
#include "haarconv/measure.hpp"

namespace haarconv {

enum class Translation { left, right, conjugate };

/// Invariance kinds. `action` is invariance on X under the subgroup acting on it.
enum class Invariance { left, right, conjugate, bi, action };

struct InvarianceReport {
  bool invariant = false;
  double deviation = 0;  ///< max TV over k of (k-transported, original)
};

// --- convolution on G -------------------------------------------------------

/// (mu * nu)(z) = sum_{xy=z} mu(x) nu(y).
DenseMeasure convolve(const FiniteGroup& g, const DenseMeasure& mu, const DenseMeasure& nu);
/// mu^{*n} by repeated squaring; n = 0 gives the identity point mass.
DenseMeasure convolve_power(const FiniteGroup& g, const DenseMeasure& mu, unsigned n);

// --- convolution on X = G/K -------------------------------------------------

/// mu * nu on X: integrates f(S(x) k y) over mu(dx) rho_K(dk) nu(dy).
DenseMeasure convolve(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                      const DenseMeasure& nu);
/// Same product without the average over K. Valid when nu is K-invariant;
/// throws InvarianceError (with the measured deviation) otherwise.
DenseMeasure convolve_kinvariant(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                                 const DenseMeasure& nu, double tol = kDenseEquality);
DenseMeasure convolve_power(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& mu,
                            unsigned n);

// --- transport --------------------------------------------------------------

DenseMeasure pushforward(const FiniteGroup& g, const DenseMeasure& mu, Translation map, Element by);
/// Transport of a measure on X by the action of g.
DenseMeasure pushforward(const CosetSpace& x, const DenseMeasure& nu, Element by);
/// pi-pushforward G -> X.
DenseMeasure project(const CosetSpace& x, const DenseMeasure& mu);
/// The K-right invariant measure on G projecting to nu:
/// mu(f) = int int f(S(x) k) rho_K(dk) nu(dx).
DenseMeasure lift(const CosetSpace& x, const FiniteSection& s, const DenseMeasure& nu);

// --- invariance -------------------------------------------------------------

/// Average of the k-transports of mu over k in K. `right` equals mu * rho_K,
/// `left` equals rho_K * mu, `bi` applies both. Not defined for `action`.
DenseMeasure average(const Subgroup& k, const DenseMeasure& mu, Invariance mode);
/// Average over h in H of h-transports of a measure on X.
DenseMeasure average_action(const CosetSpace& x, const Subgroup& h, const DenseMeasure& nu);

InvarianceReport check_invariance(const Subgroup& k, const DenseMeasure& mu, Invariance kind,
                                  double tol = kDenseEquality);
/// H-invariance of a measure on X (H defaults to K in the overload below).
InvarianceReport check_action_invariance(const CosetSpace& x, const Subgroup& h, const DenseMeasure& nu,
                                         double tol = kDenseEquality);
InvarianceReport check_action_invariance(const CosetSpace& x, const DenseMeasure& nu,
                                         double tol = kDenseEquality);

// --- densities --------------------------------------------------------------
//
// Reference measure on G is counting measure, so its image on X gives every
// coset mass |K|. A probability measure nu on X has density nu(x) / |K|.

std::vector<double> density_of(const CosetSpace& x, const DenseMeasure& nu);
DenseMeasure measure_of_density(const CosetSpace& x, std::span<const double> f);
/// (f1 * f2)(gK) = sum_h f1(hK) f2(h^-1 g K).
std::vector<double> density_convolve(const CosetSpace& x, std::span<const double> f1,
                                     std::span<const double> f2);

}  // namespace haarconv
