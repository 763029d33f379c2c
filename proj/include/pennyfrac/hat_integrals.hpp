#pragma once

namespace pennyfrac::hat {

// Closed forms of the chord-weighted hat-segment integrals
//   ∫ y * psi(y) / sqrt(z^2 - y^2) dy
// for the rising branch psi+ = y/h - (k-1) and the falling branch
// psi- = -y/h + (k+1) of the hat centered at node k (spacing h).
//
// rising_partial:  ∫_{(k-1)h}^{z},   valid for z >= (k-1)h, k >= 1
// rising_full:     ∫_{(k-1)h}^{kh},  valid for z >= kh,     k >= 1
// falling_partial: ∫_{kh}^{z},       valid for z >= kh
// falling_full:    ∫_{kh}^{(k+1)h},  valid for z >= (k+1)h
//
// Radicands are clamped to zero within -1e-14 of the working scale; larger
// violations throw DomainError naming the offending radicand.

double rising_partial(double z, int k, double h);
double rising_full(double z, int k, double h);
double falling_partial(double z, int k, double h);
double falling_full(double z, int k, double h);

// d/dz of the four integrals (the partial ones via Leibniz on the closed
// forms; needed by the subtracted derivative transforms).
double rising_partial_deriv(double z, int k, double h);
double rising_full_deriv(double z, int k, double h);
double falling_partial_deriv(double z, int k, double h);
double falling_full_deriv(double z, int k, double h);

} // namespace pennyfrac::hat
