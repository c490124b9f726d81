#ifndef HOROFANO_RATIONAL_HPP
#define HOROFANO_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace horofano {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Dense rational vector / row-major matrix.
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

/// Parses "p/q", "p" or a finite decimal such as "-0.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

double to_double(const Rational& q);
std::vector<double> to_double(const RVec& v);

bool is_integer(const Rational& q);

Rational dot(const RVec& a, const RVec& b);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec scale(const Rational& s, const RVec& v);
RVec zeros(std::size_t n);
RVec unit(std::size_t n, std::size_t i);
bool is_zero(const RVec& v);

/// x^T G y.
Rational bilinear(const RMat& gram, const RVec& x, const RVec& y);

RMat identity(std::size_t n);
RMat transpose(const RMat& m);
RVec mat_vec(const RMat& m, const RVec& v);
RMat mat_mul(const RMat& a, const RMat& b);

/// Rank by exact Gaussian elimination.
std::size_t rank(RMat m);
Rational determinant(RMat m);

/// Solves A x = b exactly for possibly non-square A. Returns false when the system
/// is inconsistent; on success x is one solution (free variables set to zero).
bool solve(const RMat& a, const RVec& b, RVec& x);

/// Inverse of a square nonsingular matrix. Throws std::invalid_argument if singular.
RMat inverse(const RMat& m);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<RVec>& points);

/// Lexicographic comparison, used for deterministic orderings.
bool lex_less(const RVec& a, const RVec& b);

/// Scales v by a positive rational so that its entries are coprime integers.
/// Returns the positive factor applied.
Rational primitive_scale(const RVec& v);

}  // namespace horofano

#endif
