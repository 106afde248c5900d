#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "danzer/geometry.hpp"
#include "danzer/polynomial.hpp"

namespace danzer {

/// A totally real number field presented by a monic integer polynomial with
/// all-real, pairwise distinct roots. Roots are stored descending, refined
/// through exact bisection and rounded once to long double.
struct TotallyRealField {
    IntPolynomial min_poly;
    int degree = 0;
    std::vector<long double> roots;
    bool irreducibility_verified = false;
};

namespace nf_detail {

// Cheap exact irreducibility evidence; false only means "not verified".
inline bool verify_irreducible(const IntPolynomial& f) {
    const int d = f.degree();
    if (d == 2) {
        // x^2 + bx + c is irreducible over Q iff b^2 - 4c is not a square
        Int disc = f.c[1] * f.c[1] - 4 * f.c[2] * f.c[0];
        if (disc <= 0) return disc < 0;
        Int s = boost::multiprecision::sqrt(disc);
        return s * s != disc;
    }
    if (d == 3) {
        // a cubic is reducible iff it has a rational (hence integer) root
        // dividing the constant term
        Int c0 = boost::multiprecision::abs(f.c[0]);
        if (c0.is_zero()) return false;  // x | f
        if (c0 > 1'000'000) return false;
        auto n = c0.convert_to<long long>();
        for (long long k = 1; k <= n; ++k) {
            if (n % k) continue;
            if (f.eval(Rational(k)).is_zero() || f.eval(Rational(-k)).is_zero()) return false;
        }
        return true;
    }
    return false;
}

}  // namespace nf_detail

inline TotallyRealField build_field(const IntPolynomial& f) {
    if (f.degree() < 2) fail(errc::bad_input, "polynomial must have degree >= 2");
    if (!f.is_monic()) fail(errc::bad_input, "polynomial must be monic");

    auto chain = sturm_chain(f);
    if (polydetail::deg(chain.back()) >= 1)
        fail(errc::degenerate_roots, "polynomial has repeated roots (" + f.to_string() + ")");

    auto brackets = isolate_real_roots(f);
    if (static_cast<int>(brackets.size()) != f.degree())
        fail(errc::not_totally_real, f.to_string() + " has " + std::to_string(brackets.size()) +
                                         " real roots, needs " + std::to_string(f.degree()));

    TotallyRealField field;
    field.min_poly = f;
    field.degree = f.degree();
    for (const auto& br : brackets) field.roots.push_back(refine_root(f, br));
    std::sort(field.roots.begin(), field.roots.end(), std::greater<>());

    for (size_t i = 0; i + 1 < field.roots.size(); ++i)
        if (field.roots[i] - field.roots[i + 1] < kTolerance)
            fail(errc::degenerate_roots, "two roots closer than the tolerance");
    for (long double r : field.roots) {
        long double scale = std::max<long double>(1.0L, powl(fabsl(r), field.degree));
        if (fabsl(f.eval_ld(r)) > kTolerance * scale)
            fail(errc::bad_input, "root refinement failed the residual check");
    }

    field.irreducibility_verified = nf_detail::verify_irreducible(f);
    return field;
}

/// Built-in presets: classical totally real polynomials with small
/// discriminants (irreducible by Eisenstein at 2 for d = 2, 4 and by the
/// integer-root test for d = 3).
inline IntPolynomial preset_poly(int d) {
    switch (d) {
        case 2: return IntPolynomial({Int(-2), Int(0), Int(1)});                  // x^2 - 2
        case 3: return IntPolynomial({Int(-1), Int(-2), Int(1), Int(1)});         // x^3 + x^2 - 2x - 1
        case 4: return IntPolynomial({Int(2), Int(0), Int(-4), Int(0), Int(1)});  // x^4 - 4x^2 + 2
        default: fail(errc::bad_input, "presets exist for d = 2, 3, 4");
    }
}

inline TotallyRealField preset_field(int d) {
    TotallyRealField f = build_field(preset_poly(d));
    f.irreducibility_verified = true;
    return f;
}

/// Basis of the lattice spanned by the embeddings of the power basis
/// 1, a, ..., a^{d-1}: row i is the image under the i-th real embedding,
/// column j the image of a^j (a Vandermonde matrix in the roots).
struct LatticeBasis {
    int dim = 0;
    std::vector<std::vector<long double>> mat;  // mat[i][j], row-major
    long double covolume = 0;                   // |det mat|
    bool normalized = false;
    std::optional<TotallyRealField> field;

    static LatticeBasis identity(int d) {
        LatticeBasis b;
        b.dim = d;
        b.mat.assign(static_cast<size_t>(d), std::vector<long double>(static_cast<size_t>(d), 0.0L));
        for (int i = 0; i < d; ++i) b.mat[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0L;
        b.covolume = 1.0L;
        return b;
    }

    std::vector<std::vector<long double>> columns() const {
        std::vector<std::vector<long double>> cols(static_cast<size_t>(dim),
                                                   std::vector<long double>(static_cast<size_t>(dim)));
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return cols;
    }
};

inline LatticeBasis build_basis(const TotallyRealField& f, bool normalize) {
    const int d = f.degree;
    LatticeBasis b;
    b.dim = d;
    b.field = f;
    b.mat.assign(static_cast<size_t>(d), std::vector<long double>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i) {
        long double p = 1.0L;
        for (int j = 0; j < d; ++j) {
            b.mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
            p *= f.roots[static_cast<size_t>(i)];
        }
    }
    // Vandermonde determinant: product of root differences
    long double covol = 1.0L;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) covol *= fabsl(f.roots[static_cast<size_t>(i)] - f.roots[static_cast<size_t>(j)]);
    b.covolume = covol;
    if (normalize) {
        long double scale = powl(covol, -1.0L / d);
        for (auto& row : b.mat)
            for (auto& v : row) v *= scale;
        b.covolume = covol * powl(scale, d);
        b.normalized = true;
    }
    return b;
}

}  // namespace danzer
