#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace scat {

using Int = mpz_class;
using Rat = mpq_class;

/// Integer coordinate vector (lattice points in N or M°, series exponents).
using IVec = std::vector<std::int64_t>;
/// Rational coordinate vector (points of V*, dual normals).
using RVec = std::vector<Rat>;

using NVector = IVec;
using MVector = IVec;
using Exponent = IVec;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

std::int64_t gcd_of(const IVec& v);
std::int64_t lcm(std::int64_t a, std::int64_t b);
bool is_primitive(const IVec& v);
std::int64_t total_degree(const IVec& v);

int sign(const Rat& x);
Rat dot(const RVec& a, const RVec& b);
RVec to_rvec(const IVec& v);
RVec scaled(const RVec& v, const Rat& s);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
bool is_zero(const RVec& v);

/// Positive rescaling of a nonzero rational vector to a primitive integer vector.
RVec primitive_direction(const RVec& v);
/// Same as primitive_direction, returned as integers.
IVec primitive_integer(const RVec& v);

/// "p/q" form, always with an explicit denominator.
std::string rat_to_string(const Rat& x);
/// Accepts "p", "p/q", with optional sign; normalizes.
Rat rat_from_string(const std::string& s);

using RMatrix = std::vector<RVec>;

/// Reduced row echelon form; pivots are searched in the first ncols columns, row operations act on whole rows.
std::vector<std::size_t> rref(RMatrix& m, std::size_t ncols);
std::size_t rank(RMatrix m, std::size_t ncols);
/// Basis of {x : row . x = 0 for every row}, canonical (from the RREF), primitive integer entries.
RMatrix nullspace(const RMatrix& rows, std::size_t ncols);

}  // namespace scat
