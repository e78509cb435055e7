#include "goldenmap/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "goldenmap/arcs.hpp"

namespace gm {

std::string Provenance::str() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Intersection: os << "Intersection(" << n << ',' << m << ',' << s << ',' << t << ')'; break;
    case PeriodicEquidistribution: os << "PeriodicEquidistribution(" << n << ')'; break;
    case Wedge: os << "Wedge(" << n << ')'; break;
  }
  return os.str();
}

LefschetzBudget lefschetz_budget(int n) {
  if (n < 1) throw std::invalid_argument("period must be positive");
  LefschetzBudget b;
  b.n = n;
  b.total = fibonacci(n + 1) + fibonacci(n - 1) + 2;
  b.at_infinity = n % 2 == 0 ? 4 : 2;
  b.expected_finite = b.total - b.at_infinity;
  return b;
}

const char* point_class_name(PointClass c) { return c == PointClass::Saddle ? "Saddle" : "Other"; }

int least_period(const std::vector<Digit>& c) {
  const int n = static_cast<int>(c.size());
  for (int p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (int i = p; i < n && ok; ++i) ok = c[i] == c[i - p];
    if (ok) return p;
  }
  return n;
}

std::vector<Digit> canonical_cycle(const std::vector<Digit>& c) {
  const int p = least_period(c);
  std::vector<Digit> base(c.begin(), c.begin() + p), best = base;
  for (int r = 1; r < p; ++r) {
    std::vector<Digit> rot(base.begin() + r, base.end());
    rot.insert(rot.end(), base.begin(), base.begin() + r);
    best = std::min(best, rot);
  }
  return best;
}

namespace {

template <class T> using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T> using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

// Newton on F_j = f(X_j) - X_{j+1}, indices mod p.
template <class T> int shoot(const MapParams<T>& m, VecX<T>& X, int max_iter, const T& tol) {
  using std::abs;
  const int p = static_cast<int>(X.size()) / 2;
  for (int it = 1; it <= max_iter; ++it) {
    VecX<T> F(2 * p);
    MatX<T> M = MatX<T>::Zero(2 * p, 2 * p);
    for (int j = 0; j < p; ++j) {
      const Vec2<T> xj = X.template segment<2>(2 * j);
      const int nj = (j + 1) % p;
      F.template segment<2>(2 * j) = forward_affine(m, xj) - X.template segment<2>(2 * nj);
      M.template block<2, 2>(2 * j, 2 * j) += jacobian(m, xj);
      M.template block<2, 2>(2 * j, 2 * nj) -= Mat2<T>::Identity();
    }
    const VecX<T> dx = M.fullPivLu().solve(-F);
    X += dx;
    T scale = T(1);
    for (int i = 0; i < X.size(); ++i) scale = std::max(scale, T(abs(X(i))));
    T step = T(0);
    for (int i = 0; i < dx.size(); ++i) step = std::max(step, T(abs(dx(i))));
    if (!(step == step)) return -1;
    if (step <= tol * scale) return it;
  }
  return max_iter;
}

template <class T> T chord(const Vec2<T>& p, const Vec2<T>& q) {
  using std::abs;
  using std::atan;
  const T h = pi<T>();
  T best = T(0);
  for (int i = 0; i < 2; ++i) {
    T d = abs(atan(p(i)) - atan(q(i)));
    if (h - d < d) d = h - d;
    best = std::max(best, d);
  }
  return best;
}

template <class T> T cycle_residual(const MapParams<T>& m, const Vec2<T>& x0, int n) {
  Vec2<T> q = x0;
  for (int k = 0; k < n; ++k) q = forward_affine(m, q);
  return chord(q, x0);
}

}  // namespace

PeriodicPoint classify(PeriodicPoint pp, const MapParams<double>& m, double eig_tol) {
  Vec2<double> q = pp.point.affine();
  Mat2<double> M = Mat2<double>::Identity();
  double det = 1;
  for (int j = 0; j < pp.period; ++j) {
    const Mat2<double> J = jacobian(m, q);
    M = J * M;
    det *= J.determinant();
    q = forward_affine(m, q);
  }
  pp.multiplier = M;
  pp.det = det;
  const auto r0 = two_form_density(pp.point.affine());
  const auto r1 = two_form_density(q);
  pp.zeta_det = (r0 && r1) ? det * *r1 / *r0 : NAN;
  // Closed form for 2x2, using the determinant product for the small root.
  const double tr = M.trace();
  const double disc = tr * tr - 4 * det;
  if (disc >= 0) {
    const double big = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
    pp.eigenvalues = {std::complex<double>(big), std::complex<double>(big != 0 ? det / big : 0)};
  } else {
    const std::complex<double> s(0, std::sqrt(-disc));
    pp.eigenvalues = {0.5 * (tr + s), 0.5 * (tr - s)};
  }
  if (std::abs(pp.eigenvalues[1]) > std::abs(pp.eigenvalues[0])) std::swap(pp.eigenvalues[0], pp.eigenvalues[1]);
  const bool real = disc >= 0;
  pp.cls = real && std::abs(pp.eigenvalues[0]) > 1 + eig_tol && std::abs(pp.eigenvalues[1]) < 1 - eig_tol
               ? PointClass::Saddle
               : PointClass::Other;
  return pp;
}

std::vector<PeriodicPoint> locate_all(const MapParams<double>& m, int n, const LocateOptions& opt) {
  if (n < 1) throw std::invalid_argument("period must be positive");
  std::vector<std::vector<Digit>> classes;
  for (const auto& c : periodic_cycles(n)) {
    if (is_alternating_cycle(c)) continue;
    classes.push_back(canonical_cycle(c));
  }
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  const int k = opt.half_width;
  std::vector<PeriodicPoint> out;
  for (const auto& base : classes) {
    const int p = static_cast<int>(base.size());
    // Seeds: the midpoint of a canonical u-arc, pushed to the middle of w[-k, k].
    VecX<double> X(2 * p);
    for (int r = 0; r < p; ++r) {
      std::vector<Digit> w;
      for (int i = -k; i <= k; ++i) w.push_back(base[((r + i) % p + p) % p]);
      const Branch b = find_branch(m, ArcKind::U, w);
      const auto q = forward_n(m, b.seed.at(0.5 * (b.lo + b.hi)), k);
      if (!q || !q->is_finite()) throw ConvergenceFailure(base, "seed at infinity for " + digits_str(base));
      X.segment<2>(2 * r) = q->affine();
    }
    const VecX<double> seed = X;
    const int steps = shoot(m, X, 40, 1e-15);
    if (steps < 0) throw ConvergenceFailure(base, "Newton diverged for " + digits_str(base));

    std::vector<Vec2<double>> pts(p);
    std::vector<double> resid(p);
    std::vector<int> bits(p, 53);
    for (int r = 0; r < p; ++r) {
      pts[r] = X.segment<2>(2 * r);
      resid[r] = cycle_residual(m, pts[r], n);
    }
    double link = 0;
    for (int r = 0; r < p; ++r) link = std::max(link, chord(forward_affine(m, pts[r]), pts[(r + 1) % p]));

    const bool polish = *std::max_element(resid.begin(), resid.end()) > opt.residual_tol;
    if (polish) {
      HighPrecisionScope scope(opt.polish_bits);
      const MapParams<HighFloat> mh = m.cast<HighFloat>();
      VecX<HighFloat> XH(2 * p);
      for (int i = 0; i < 2 * p; ++i) XH(i) = HighFloat(X(i));
      const HighFloat tol = pow(HighFloat(2), -(opt.polish_bits - 8));
      if (shoot(mh, XH, 20, tol) < 0) throw ConvergenceFailure(base, "polish diverged for " + digits_str(base));
      for (int r = 0; r < p; ++r) {
        const Vec2<HighFloat> ph = XH.segment<2>(2 * r);
        resid[r] = cycle_residual(mh, ph, n).convert_to<double>();
        bits[r] = opt.polish_bits;
        pts[r] = Vec2<double>(ph(0).convert_to<double>(), ph(1).convert_to<double>());
      }
    }

    for (int r = 0; r < p; ++r) {
      PeriodicPoint pp;
      pp.cycle.assign(base.begin() + r, base.end());
      pp.cycle.insert(pp.cycle.end(), base.begin(), base.begin() + r);
      pp.period = p;
      pp.point = embed_affine(pts[r]);
      pp.residual = resid[r];
      pp.residual_bits = bits[r];
      pp.link_residual = link;
      pp.newton_steps = steps;
      ItineraryOptions io;
      io.eps = 1e-9;
      const OrbitRecord rec = itinerary(m, pp.point, 0, n, io);
      pp.itinerary_ok = rec.hi() >= n;
      for (int i = 0; i <= n && pp.itinerary_ok; ++i)
        pp.itinerary_ok = rec.digit(i) == pp.cycle[i % p] && !rec.ambiguous[i];
      pp = classify(pp, m, opt.eig_tol);
      if (!std::isfinite(pp.residual) || pp.residual > opt.residual_tol || !pp.itinerary_ok) {
        std::ostringstream os;
        os.precision(3);
        os << "no periodic point for " << digits_str(pp.cycle) << ": residual " << pp.residual << " at "
           << pp.residual_bits << " bits, itinerary " << (pp.itinerary_ok ? "ok" : "mismatch")
           << ", seed distance " << (X - seed).norm();
        throw ConvergenceFailure(pp.cycle, os.str());
      }
      out.push_back(std::move(pp));
    }
  }
  return out;
}

WeightedPointSet equidistribution_measure(const MapParams<double>& m, int n, const LocateOptions& opt) {
  const auto pts = locate_all(m, n, opt);
  WeightedPointSet ws;
  ws.provenance.kind = Provenance::PeriodicEquidistribution;
  ws.provenance.n = n;
  for (const auto& pp : pts) ws.atoms.push_back({pp.point, 1.0 / pts.size()});
  return ws;
}

}  // namespace gm
