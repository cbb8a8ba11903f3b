// Built with -frounding-math: the interval type switches the FPU rounding mode.

#include "famedkit/geometry.hpp"

#include <boost/numeric/interval.hpp>

#include <array>

namespace famedkit {

namespace {

using Interval = boost::numeric::interval<double>;

struct CInterval {
  Interval re{0.0}, im{0.0};

  CInterval() = default;
  CInterval(Interval r, Interval i) : re(r), im(i) {}
  explicit CInterval(Complex z) : re(z.real()), im(z.imag()) {}

  friend CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
  friend CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
  friend CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CInterval operator*(long k, const CInterval& a) {
    const Interval s(static_cast<double>(k));
    return {s * a.re, s * a.im};
  }
};

CInterval power(const CInterval& x, long e) {
  CInterval out(Interval(1.0), Interval(0.0));
  for (long i = 0; i < e; ++i) out = out * x;
  return out;
}

// z^a (1-z)^b factor of a monomial.
struct Factor {
  std::size_t var = 0;
  long a = 0, b = 0;
};

// Rectangular form of one row: prod_pos - sign * prod_neg = 0, where the
// row's product is (-1)^{sum c''} prod z^{c-c''} (1-z)^{c''-c'} and must equal
// (-1)^{target}.
struct RectangularRow {
  std::vector<Factor> pos, neg;
  long sign = 1;
};

RectangularRow rectangular(const HolonomyRow& row, long target_pi) {
  RectangularRow out;
  long parity = target_pi;
  for (Eigen::Index t = 0; t < row.c.size(); ++t) {
    const long a = row.c(t) - row.c2(t);
    const long b = row.c2(t) - row.c1(t);
    parity += row.c2(t);
    Factor p{static_cast<std::size_t>(t), std::max(a, 0L), std::max(b, 0L)};
    Factor q{static_cast<std::size_t>(t), std::max(-a, 0L), std::max(-b, 0L)};
    if (p.a || p.b) out.pos.push_back(p);
    if (q.a || q.b) out.neg.push_back(q);
  }
  out.sign = (parity % 2 == 0) ? 1 : -1;
  return out;
}

CInterval factor_value(const Factor& f, const std::vector<CInterval>& z) {
  const CInterval one(Interval(1.0), Interval(0.0));
  return power(z[f.var], f.a) * power(one - z[f.var], f.b);
}

CInterval factor_derivative(const Factor& f, const std::vector<CInterval>& z) {
  const CInterval one(Interval(1.0), Interval(0.0));
  const CInterval& x = z[f.var];
  CInterval d(Interval(0.0), Interval(0.0));
  if (f.a > 0) d = d + f.a * (power(x, f.a - 1) * power(one - x, f.b));
  if (f.b > 0) d = d - f.b * (power(x, f.a) * power(one - x, f.b - 1));
  return d;
}

CInterval product(const std::vector<Factor>& fs, const std::vector<CInterval>& z) {
  CInterval out(Interval(1.0), Interval(0.0));
  for (const auto& f : fs) out = out * factor_value(f, z);
  return out;
}

// d/dz_var of a product of factors (each variable appears at most once).
CInterval product_derivative(const std::vector<Factor>& fs, const std::vector<CInterval>& z, std::size_t var) {
  CInterval out(Interval(1.0), Interval(0.0));
  bool present = false;
  for (const auto& f : fs) {
    if (f.var == var) {
      present = true;
      out = out * factor_derivative(f, z);
    } else {
      out = out * factor_value(f, z);
    }
  }
  return present ? out : CInterval(Interval(0.0), Interval(0.0));
}

CInterval row_value(const RectangularRow& r, const std::vector<CInterval>& z) {
  return product(r.pos, z) - r.sign * product(r.neg, z);
}

CInterval row_derivative(const RectangularRow& r, const std::vector<CInterval>& z, std::size_t var) {
  return product_derivative(r.pos, z, var) - r.sign * product_derivative(r.neg, z, var);
}

bool strictly_inside(const Interval& inner, const Interval& outer) {
  return inner.lower() > outer.lower() && inner.upper() < outer.upper();
}

} // namespace

CertifiedBox certify_solution(const GluingSystem& sys, const ShapeVector& shapes) {
  const std::size_t n = shapes.size();
  if (sys.rows.size() != n) throw CertificationFailed("system is not square");
  std::vector<RectangularRow> rows;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) rows.push_back(rectangular(sys.rows[r], sys.target_pi[r]));

  // Floating Jacobian at the center and its inverse Y.
  ComplexMatrix jc(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<CInterval> center(n);
  for (std::size_t t = 0; t < n; ++t) center[t] = CInterval(shapes.z[t]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t t = 0; t < n; ++t) {
      const CInterval d = row_derivative(rows[r], center, t);
      jc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
          Complex(median(d.re), median(d.im));
    }
  const ComplexMatrix y = jc.inverse();
  if (!y.allFinite()) throw CertificationFailed("singular Jacobian at the center");

  std::vector<CInterval> f_center(n);
  for (std::size_t r = 0; r < n; ++r) f_center[r] = row_value(rows[r], center);

  const std::array<double, 7> radii{1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-11, 1e-12};
  for (const double radius : radii) {
    std::vector<CInterval> box(n);
    for (std::size_t t = 0; t < n; ++t)
      box[t] = CInterval(Interval(shapes.z[t].real() - radius, shapes.z[t].real() + radius),
                         Interval(shapes.z[t].imag() - radius, shapes.z[t].imag() + radius));

    // Interval Jacobian over the box.
    std::vector<std::vector<CInterval>> jx(n, std::vector<CInterval>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t t = 0; t < n; ++t) jx[r][t] = row_derivative(rows[r], box, t);

    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      // K_i = c_i - (Y f(c))_i + sum_k (I - Y J(X))_{ik} (X_k - c_k)
      CInterval k = center[i];
      for (std::size_t r = 0; r < n; ++r)
        k = k - CInterval(y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r))) * f_center[r];
      for (std::size_t col = 0; col < n; ++col) {
        CInterval m(Interval(i == col ? 1.0 : 0.0), Interval(0.0));
        for (std::size_t r = 0; r < n; ++r)
          m = m - CInterval(y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r))) * jx[r][col];
        k = k + m * (box[col] - center[col]);
      }
      inside = strictly_inside(k.re, box[i].re) && strictly_inside(k.im, box[i].im);
    }
    if (!inside) continue;

    CertifiedBox out;
    out.certified = true;
    out.radius = radius;
    out.positivity = true;
    for (const auto& b : box) {
      out.boxes.push_back({b.re.lower(), b.re.upper(), b.im.lower(), b.im.upper()});
      out.positivity = out.positivity && b.im.lower() > 0;
    }
    out.branch_ok = residual(sys, shapes).cwiseAbs().maxCoeff() < 1e-6;
    return out;
  }
  throw CertificationFailed("no radius in [1e-12, 1e-6] passes the Krawczyk test");
}

} // namespace famedkit
