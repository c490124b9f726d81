#include "horofano/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace horofano {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Base 10 regardless of leading zeros (the string constructor reads "025" as octal).
Integer decimal(std::string_view digits) {
    Integer z;
    mpz_set_str(z.backend().data(), std::string(digits).c_str(), 10);
    return z;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("not a rational: \"" + std::string(whole) + "\"");
    }
    Integer z = decimal(s);
    return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("not a rational: empty string");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), text);
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
        Integer den = decimal(den_text);
        if (den == 0) throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
        return Rational(num, den);
    }
    if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot_pos);
        std::string_view frac_part = text.substr(dot_pos + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
        }
        std::string digits = std::string(int_part) + std::string(frac_part);
        Integer num = digits.empty() ? Integer(0) : decimal(digits);
        Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
        Rational q(num, den);
        return negative ? Rational(-q) : q;
    }
    return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::vector<double> to_double(const RVec& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_double(x));
    return out;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Rational dot(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RVec add(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RVec sub(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RVec scale(const Rational& s, const RVec& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

RVec zeros(std::size_t n) { return RVec(n, Rational(0)); }

RVec unit(std::size_t n, std::size_t i) {
    RVec e = zeros(n);
    e.at(i) = 1;
    return e;
}

bool is_zero(const RVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational bilinear(const RMat& gram, const RVec& x, const RVec& y) { return dot(x, mat_vec(gram, y)); }

RMat identity(std::size_t n) {
    RMat m(n, zeros(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RMat transpose(const RMat& m) {
    if (m.empty()) return {};
    RMat t(m[0].size(), zeros(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RVec mat_vec(const RMat& m, const RVec& v) {
    RVec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

RMat mat_mul(const RMat& a, const RMat& b) {
    RMat bt = transpose(b);
    RMat r(a.size(), zeros(bt.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < bt.size(); ++j) r[i][j] = dot(a[i], bt[j]);
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(RMat m) { return rref(m).size(); }

Rational determinant(RMat m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

bool solve(const RMat& a, const RVec& b, RVec& x) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    RMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return false;
    x = zeros(cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return true;
}

RMat inverse(const RMat& m) {
    const std::size_t n = m.size();
    RMat aug = m;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw std::invalid_argument("inverse: matrix is not square");
        RVec e = unit(n, i);
        aug[i].insert(aug[i].end(), e.begin(), e.end());
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::invalid_argument("inverse: singular matrix");
    RMat inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = RVec(aug[i].begin() + static_cast<long>(n), aug[i].end());
    return inv;
}

int affine_dimension(const std::vector<RVec>& points) {
    if (points.empty()) return -1;
    RMat diffs;
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
    return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
}

bool lex_less(const RVec& a, const RVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rational primitive_scale(const RVec& v) {
    Integer lcm_den = 1;
    for (const auto& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
    Integer g = 0;
    for (const auto& x : v) {
        Integer n = numerator(x) * (lcm_den / denominator(x));
        g = boost::multiprecision::gcd(g, n);
    }
    if (g == 0) throw std::invalid_argument("primitive_scale: zero vector");
    if (g < 0) g = -g;
    return Rational(lcm_den, g);
}

}  // namespace horofano
