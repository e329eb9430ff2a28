#include "larsson/type_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "larsson/errors.hpp"
#include "larsson/kernel.hpp"

namespace larsson {

std::pair<std::vector<double>, int> endpoint_recursion(const Params& p) {
  const DerivedConstants k = derive(p);
  std::vector<double> rho = {k.rho1};
  while (rho.back() >= 0.0) {
    rho.push_back(p.a * rho.back() - 2.0 * k.t);
    if (rho.size() > 64) throw InternalInconsistency("hole recursion did not terminate");
  }
  const int l = static_cast<int>(rho.size()) - 1;
  return {std::move(rho), l};
}

double epsilon_bound(const Params& p) {
  const DerivedConstants k = derive(p);
  if (k.rho1 < 0.0) return k.t / (2.0 * p.a) - k.c;
  auto [rho, l] = endpoint_recursion(p);
  return std::min(-rho.back() / (2.0 * p.a), k.t);
}

double default_epsilon(const Params& p) {
  return 0.5 * epsilon_bound(p);
}

TypeSpace build_type_space(const Params& p, double eps) {
  const DerivedConstants k = derive(p);
  const double bound = epsilon_bound(p);
  if (!(eps > 0.0) || !(eps < bound)) {
    std::ostringstream msg;
    msg << "epsilon " << eps << " outside (0, " << bound << ")";
    throw EpsilonTooLarge(msg.str());
  }

  TypeSpace T;
  T.epsilon = eps;
  auto [rho, l] = endpoint_recursion(p);
  T.rho_seq = rho;
  T.level_l = l;

  IntervalSet pre{Interval{-1.0 + k.c, 1.0 - k.c}};
  if (l > 0) {
    const LineFamily lines = LineFamily::from(p);
    // Round 1 endpoints come from the lines at the top/bottom of the
    // pre-type space; later rounds map endpoints back through the stripes.
    struct Hole {
      std::string address;
      double u, v;
    };
    std::vector<Hole> current;
    for (int i = 1; i <= 2; ++i) {
      const double u = p.a * (1.0 - k.c - lines.intercept[2 * i - 1]);
      const double v = p.a * (-1.0 + k.c - lines.intercept[2 * i]);
      current.push_back({std::string(1, static_cast<char>('0' + i)), u, v});
    }
    for (int round = 1; round <= l; ++round) {
      for (const Hole& h : current) {
        pre.subtract({h.u, h.v});
        T.ledger.push_back({h.address, h.u, h.v});
      }
      if (round == l) break;
      std::vector<Hole> next;
      next.reserve(current.size() * 3);
      for (const Hole& h : current) {
        for (int dig = 1; dig <= 3; ++dig) {
          const double u = p.a * (h.u - lines.intercept[2 * dig - 1]);
          const double v = p.a * (h.v - lines.intercept[2 * dig - 2]);
          next.push_back({h.address + static_cast<char>('0' + dig), u, v});
        }
      }
      current = std::move(next);
    }
  }

  std::vector<Interval> shrunk;
  shrunk.reserve(pre.size());
  for (const Interval& comp : pre.parts()) {
    if (comp.length() <= 2.0 * eps)
      throw EpsilonTooLarge("epsilon-shrink empties a component");
    shrunk.push_back({comp.lo + eps, comp.hi - eps});
  }
  T.components = IntervalSet::normalized(std::move(shrunk), 1e-12);

  const auto expected = static_cast<std::size_t>(std::pow(3.0, l));
  if (T.components.size() != expected)
    throw InternalInconsistency("type space component count is not 3^l");
  return T;
}

IntervalSet support_E1(double x, const Params& p, const TypeSpace& T) {
  if (!T.contains(x)) throw XOutsideT("x outside the type space");
  const LineFamily lines = LineFamily::from(p);
  std::vector<Interval> parts;
  for (int k = 1; k <= 3; ++k) {
    const double lo = lines.eval(2 * k, x, p);
    const double hi = lines.eval(2 * k - 1, x, p);
    for (const Interval& piece : T.components.intersect({lo, hi}).parts()) {
      if (piece.length() > 0.0) parts.push_back(piece);
    }
  }
  return IntervalSet::normalized(std::move(parts), 1e-12);
}

namespace {

double longest_piece(const IntervalSet& set) {
  double best = 0.0;
  for (const Interval& p : set.parts()) best = std::max(best, p.length());
  return best;
}

}  // namespace

double kappa(const Params& p, const TypeSpace& T) {
  constexpr double kStep = 1e-4;
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& comp : T.components.parts()) {
    const int cells = std::max(1, static_cast<int>(std::ceil(comp.length() / kStep)));
    for (int i = 0; i <= cells; ++i) {
      const double x = comp.lo + comp.length() * i / cells;
      best = std::min(best, longest_piece(support_E1(x, p, T)));
    }
  }
  return best;
}

KappaReport kappa_report(const Params& p, const TypeSpace& T) {
  const DerivedConstants k = derive(p);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  KappaReport r{};
  r.scanned = kappa(p, T);
  r.stripe_width = 2.0 * k.t / p.a;
  if (T.level_l == 0) {
    r.simple_kappa1 = 0.5 * (k.t / p.a - 2.0 * k.c);
    r.simple_kappa2 = 4.0 * k.t / p.a;
    r.general_case_a = nan;
    r.general_case_c = nan;
  } else {
    r.simple_kappa1 = nan;
    r.simple_kappa2 = nan;
    r.general_case_a = T.epsilon / p.a - T.epsilon;
    const double s = T.components[0].length();
    const double rho_l = T.rho_seq[static_cast<std::size_t>(T.level_l) - 1];
    r.general_case_c =
        std::min(s, 0.5 * (r.stripe_width - (rho_l + 2.0 * T.epsilon)));
  }
  return r;
}

int support_bound(const Params& p, const TypeSpace& T) {
  const DerivedConstants k = derive(p);
  const double kap = kappa(p, T);
  if (!(kap > 0.0)) throw InternalInconsistency("scanned kappa is zero");
  const double full = 2.0 * (1.0 - k.c - T.epsilon);
  const int n1 = std::max(
      1, static_cast<int>(std::ceil(std::log(full / kap) / std::log(1.0 / p.a))));
  int n = 2 * n1;
  if (T.level_l > 0) n += T.level_l;
  return std::max(1, n);
}

IntervalSet iterate_support(double x, int n, const Params& p,
                            const TypeSpace& T) {
  if (n < 1) throw BadIndex("iteration count must be >= 1");
  const LineFamily lines = LineFamily::from(p);
  IntervalSet current = support_E1(x, p, T);
  for (int step = 2; step <= n; ++step) {
    std::vector<Interval> parts;
    for (const Interval& piece : current.parts()) {
      for (int k = 1; k <= 3; ++k) {
        const double lo = lines.eval(2 * k, piece.lo, p);
        const double hi = lines.eval(2 * k - 1, piece.hi, p);
        for (const Interval& cut : T.components.intersect({lo, hi}).parts()) {
          if (cut.length() > 0.0) parts.push_back(cut);
        }
      }
    }
    current = IntervalSet::normalized(std::move(parts), 1e-12);
  }
  return current;
}

}  // namespace larsson
