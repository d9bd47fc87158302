#include "rwpot/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rwpot/errors.hpp"

namespace rwpot {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Distribution Distribution::point(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw DomainError("point mass value must be finite and >= 0");
  Distribution d;
  d.kind_ = Kind::Point;
  d.a_ = value;
  d.id_ = d.describe();
  return d;
}

Distribution Distribution::atomic(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("atomic distribution needs at least one atom");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].value >= 0.0) || !std::isfinite(atoms[i].value)) {
      throw DomainError("atomic values must be finite and >= 0");
    }
    if (!(atoms[i].prob > 0.0)) throw DomainError("atomic probabilities must be positive");
    if (i > 0 && !(atoms[i].value > atoms[i - 1].value)) {
      throw DomainError("atomic values must be strictly increasing");
    }
    total += atoms[i].prob;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw DomainError("atomic probabilities must sum to 1");
  Distribution d;
  d.kind_ = Kind::Atomic;
  d.atoms_ = std::move(atoms);
  d.cumulative_.resize(d.atoms_.size());
  double run = 0.0;
  for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
    run += d.atoms_[i].prob;
    d.cumulative_[i] = run;
  }
  d.cumulative_.back() = 1.0;
  d.id_ = d.describe();
  return d;
}

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential rate must be > 0");
  Distribution d;
  d.kind_ = Kind::Exponential;
  d.a_ = rate;
  d.id_ = d.describe();
  return d;
}

Distribution Distribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) throw DomainError("uniform needs 0 <= a < b");
  Distribution d;
  d.kind_ = Kind::Uniform;
  d.a_ = a;
  d.b_ = b;
  d.id_ = d.describe();
  return d;
}

Distribution shift_by(const Distribution& spec, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("shift_by: lambda must be >= 0");
  Distribution d;
  d.kind_ = Distribution::Kind::Shifted;
  d.a_ = lambda;
  d.base_ = std::make_shared<const Distribution>(spec);
  d.id_ = spec.id() + "+" + format_number(lambda);
  return d;
}

Distribution Distribution::with_id(std::string id) const {
  Distribution d = *this;
  d.id_ = std::move(id);
  return d;
}

double Distribution::cdf(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case Kind::Point:
      return t >= a_ ? 1.0 : 0.0;
    case Kind::Atomic: {
      // Largest atom value <= t.
      auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                                 [](double v, const Atom& a) { return v < a.value; });
      if (it == atoms_.begin()) return 0.0;
      return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
    }
    case Kind::Exponential:
      return -std::expm1(-a_ * t);
    case Kind::Uniform:
      if (t < a_) return 0.0;
      if (t >= b_) return 1.0;
      return (t - a_) / (b_ - a_);
    case Kind::Shifted:
      return t < a_ ? 0.0 : base_->cdf(t - a_);
  }
  return 0.0;
}

double Distribution::pseudo_inverse(double s) const {
  switch (kind_) {
    case Kind::Point:
      return a_;
    case Kind::Atomic: {
      // First atom whose cumulative probability reaches s.
      auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), s);
      if (it == cumulative_.end()) return atoms_.back().value;
      return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].value;
    }
    case Kind::Exponential:
      return -std::log1p(-s) / a_;
    case Kind::Uniform:
      return a_ + s * (b_ - a_);
    case Kind::Shifted:
      return base_->pseudo_inverse(s) + a_;
  }
  return 0.0;
}

double Distribution::laplace(double k) const {
  if (k == 0.0) return 1.0;
  switch (kind_) {
    case Kind::Point:
      return std::exp(-k * a_);
    case Kind::Atomic: {
      double sum = 0.0;
      for (const auto& atom : atoms_) sum += atom.prob * std::exp(-k * atom.value);
      return sum;
    }
    case Kind::Exponential:
      return a_ / (a_ + k);
    case Kind::Uniform:
      // (e^{-ka} - e^{-kb}) / (k (b - a)), written to avoid cancellation.
      return std::exp(-k * a_) * -std::expm1(-k * (b_ - a_)) / (k * (b_ - a_));
    case Kind::Shifted:
      return std::exp(-k * a_) * base_->laplace(k);
  }
  return 0.0;
}

double Distribution::log_laplace(double k) const {
  if (k == 0.0) return 0.0;
  switch (kind_) {
    case Kind::Point:
      return -k * a_;
    case Kind::Atomic: {
      // Factor out the smallest atom so that large k cannot underflow.
      const double v0 = atoms_.front().value;
      double sum = 0.0;
      for (const auto& atom : atoms_) sum += atom.prob * std::exp(-k * (atom.value - v0));
      return -k * v0 + std::log(sum);
    }
    case Kind::Exponential:
      return std::log(a_ / (a_ + k));
    case Kind::Uniform:
      return -k * a_ + std::log(-std::expm1(-k * (b_ - a_)) / (k * (b_ - a_)));
    case Kind::Shifted:
      return -k * a_ + base_->log_laplace(k);
  }
  return 0.0;
}

double Distribution::mean() const {
  switch (kind_) {
    case Kind::Point:
      return a_;
    case Kind::Atomic: {
      double sum = 0.0;
      for (const auto& atom : atoms_) sum += atom.prob * atom.value;
      return sum;
    }
    case Kind::Exponential:
      return 1.0 / a_;
    case Kind::Uniform:
      return 0.5 * (a_ + b_);
    case Kind::Shifted:
      return a_ + base_->mean();
  }
  return 0.0;
}

bool Distribution::is_step() const {
  switch (kind_) {
    case Kind::Point:
    case Kind::Atomic:
      return true;
    case Kind::Shifted:
      return base_->is_step();
    default:
      return false;
  }
}

std::vector<double> Distribution::jump_points() const {
  switch (kind_) {
    case Kind::Point:
      return {a_};
    case Kind::Atomic: {
      std::vector<double> out;
      out.reserve(atoms_.size());
      for (const auto& atom : atoms_) out.push_back(atom.value);
      return out;
    }
    case Kind::Shifted: {
      auto out = base_->jump_points();
      for (double& v : out) v += a_;
      return out;
    }
    default:
      return {};
  }
}

double Distribution::support_min() const {
  switch (kind_) {
    case Kind::Point:
      return a_;
    case Kind::Atomic:
      return atoms_.front().value;
    case Kind::Exponential:
      return 0.0;
    case Kind::Uniform:
      return a_;
    case Kind::Shifted:
      return a_ + base_->support_min();
  }
  return 0.0;
}

double Distribution::total_shift() const {
  return kind_ == Kind::Shifted ? a_ + base_->total_shift() : 0.0;
}

const Distribution& Distribution::innermost() const {
  return kind_ == Kind::Shifted ? base_->innermost() : *this;
}

std::string Distribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Point:
      os << "point " << format_number(a_);
      break;
    case Kind::Atomic:
      os << "atomic";
      for (const auto& atom : atoms_) os << ' ' << format_number(atom.value) << ':' << format_number(atom.prob);
      break;
    case Kind::Exponential:
      os << "exponential " << format_number(a_);
      break;
    case Kind::Uniform:
      os << "uniform " << format_number(a_) << ' ' << format_number(b_);
      break;
    case Kind::Shifted:
      os << "shifted " << format_number(a_) << ' ' << base_->describe();
      break;
  }
  return os.str();
}

double evaluate_cdf(const Distribution& spec, double t) { return spec.cdf(t); }

double pseudo_inverse(const Distribution& spec, double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("pseudo_inverse: s must lie in (0,1)");
  return spec.pseudo_inverse(s);
}

double laplace_transform(const Distribution& spec, double k) {
  if (!(k >= 0.0)) throw DomainError("laplace_transform: k must be >= 0");
  return spec.laplace(k);
}

double pseudo_inverse_bisect(const std::function<double(double)>& cdf, double s, double upper_bracket,
                             double tol) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("pseudo_inverse_bisect: s must lie in (0,1)");
  if (!(cdf(0.0) < s)) return 0.0;
  double lo = 0.0;  // cdf(lo) < s
  double hi = upper_bracket;
  while (cdf(hi) < s) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericError("pseudo_inverse_bisect: no upper bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double laplace_transform_quadrature(const Distribution& spec, double k, double rel_tol) {
  if (!(k >= 0.0)) throw DomainError("laplace_transform_quadrature: k must be >= 0");
  if (k == 0.0) return 1.0;
  constexpr double kEdge = 0x1.0p-53;
  auto f = [&](double s) {
    s = std::clamp(s, kEdge, 1.0 - kEdge);
    return std::exp(-k * spec.pseudo_inverse(s));
  };
  // Coarse pass fixes the absolute scale for the relative tolerance.
  const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
  const double coarse = simpson(fa, fm, fb, 1.0);
  const double scale = std::max(std::fabs(coarse), std::numeric_limits<double>::min());
  return adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, coarse, rel_tol * scale, 48);
}

namespace {

// Points where the dominance relation is tested. Exact for step pairs.
std::vector<double> comparison_points(const Distribution& F, const Distribution& G, int grid_points,
                                      bool& numerical) {
  std::vector<double> pts;
  numerical = !(F.is_step() && G.is_step());
  auto fj = F.jump_points();
  auto gj = G.jump_points();
  pts.insert(pts.end(), fj.begin(), fj.end());
  pts.insert(pts.end(), gj.begin(), gj.end());
  if (numerical) {
    constexpr double kTail = 1.0 - 1e-12;
    const double hi = std::max({F.pseudo_inverse(kTail), G.pseudo_inverse(kTail), 1e-9});
    const int n = std::max(grid_points, 2);
    for (int i = 0; i < n; ++i) pts.push_back(hi * static_cast<double>(i) / static_cast<double>(n - 1));
    // Tail probes beyond the hull.
    pts.push_back(2.0 * hi);
    pts.push_back(4.0 * hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

DominanceResult strictly_dominates(const Distribution& F, const Distribution& G, int grid_points) {
  DominanceResult r;
  const auto pts = comparison_points(F, G, grid_points, r.numerical);
  bool differs = false;
  for (double t : pts) {
    const double f = F.cdf(t), g = G.cdf(t);
    if (f > g + kCdfCompareTol) return r;
    if (g > f + kCdfCompareTol) differs = true;
  }
  r.dominates = differs;
  return r;
}

DominanceWitness dominance_witness(const Distribution& F, const Distribution& G, int grid_points) {
  if (!strictly_dominates(F, G, grid_points).dominates) {
    throw PreconditionError("dominance_witness: F does not strictly dominate G");
  }
  bool numerical = false;
  const auto pts = comparison_points(F, G, grid_points, numerical);
  DominanceWitness w;
  bool found = false;
  for (double t : pts) {
    if (G.cdf(t) > F.cdf(t) + kCdfCompareTol) {
      w.t_prime = t;
      found = true;
      break;
    }
  }
  if (!found) throw PreconditionError("dominance_witness: no point with G > F");
  const double Ft = F.cdf(w.t_prime);
  const double Gt = G.cdf(w.t_prime);
  w.epsilon = 0.5 * (Gt - Ft);
  const double level = Ft + w.epsilon;

  // sup{eta : F(t' + eta) <= F(t') + epsilon}, capped at 1.
  double sup_eta = 1.0;
  if (F.is_step()) {
    for (double j : F.jump_points()) {
      if (j > w.t_prime && F.cdf(j) > level) {
        sup_eta = std::min(1.0, j - w.t_prime);
        break;
      }
    }
  } else if (F.cdf(w.t_prime + 1.0) > level) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > kBisectionAbsTol) {
      const double mid = 0.5 * (lo + hi);
      if (F.cdf(w.t_prime + mid) <= level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    sup_eta = lo;
  }
  w.eta0 = 0.5 * sup_eta;
  const double Fshift = F.cdf(w.t_prime + w.eta0);
  const double third = (Gt - Fshift) / 3.0;
  w.h_lo = Fshift + third;
  w.h_hi = Gt - third;
  if (!(w.h_lo > 0.0 && w.h_hi < 1.0 && w.h_lo < w.h_hi && w.eta0 > 0.0)) {
    throw NumericError("dominance_witness: degenerate witness interval");
  }
  return w;
}

std::size_t witness_violations(const DominanceWitness& w, const Distribution& F, const Distribution& G,
                               int grid_points) {
  std::size_t bad = 0;
  const int n = std::max(grid_points, 2);
  for (int i = 0; i < n; ++i) {
    const double s = w.h_lo + (w.h_hi - w.h_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (F.pseudo_inverse(s) - G.pseudo_inverse(s) < w.eta0 - kBisectionAbsTol) ++bad;
  }
  return bad;
}

}  // namespace rwpot
