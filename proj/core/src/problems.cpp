#include "momograd/problems.hpp"

#include "momograd/rng.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace momograd {

namespace {

Vector constant_vec(int n, double value) { return Vector::Constant(n, value); }

MultiObjectiveProblem base(const char* name, int n, int m, Vector lower, Vector upper,
                           bool convex) {
  MultiObjectiveProblem p;
  p.name = name;
  p.n = n;
  p.m = m;
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.convex = convex;
  return p;
}

// F1 = x^2 - 4, F2 = (x - 1)^2; every x in [0, 1] is Pareto critical.
MultiObjectiveProblem make_ap_ex() {
  auto p = base("AP-EX", 1, 2, constant_vec(1, -5), constant_vec(1, 5), true);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << x[0] * x[0] - 4.0, (x[0] - 1.0) * (x[0] - 1.0);
    return f;
  };
  p.jac = [](const Vector& x) {
    Jacobian j(2, 1);
    j << 2.0 * x[0], 2.0 * (x[0] - 1.0);
    return j;
  };
  return p;
}

// F1 = x1^2 + x2^2, F2 = (x1 - 5)^2 + (x2 - 5)^2.
MultiObjectiveProblem make_bk1() {
  auto p = base("BK1", 2, 2, constant_vec(2, -5), constant_vec(2, 10), true);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << x.squaredNorm(), (x.array() - 5.0).matrix().squaredNorm();
    return f;
  };
  p.jac = [](const Vector& x) {
    Jacobian j(2, 2);
    j.row(0) = 2.0 * x.transpose();
    j.row(1) = 2.0 * (x.array() - 5.0).matrix().transpose();
    return j;
  };
  return p;
}

// F1 = 1 - exp(-sum (xi - 1/sqrt(n))^2), F2 likewise with +1/sqrt(n).
MultiObjectiveProblem make_mop2() {
  const int n = 2;
  auto p = base("MOP2", n, 2, constant_vec(n, -4), constant_vec(n, 4), false);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  p.eval = [a](const Vector& x) {
    Vector f(2);
    f << 1.0 - std::exp(-(x.array() - a).square().sum()),
        1.0 - std::exp(-(x.array() + a).square().sum());
    return f;
  };
  p.jac = [a](const Vector& x) {
    const double e1 = std::exp(-(x.array() - a).square().sum());
    const double e2 = std::exp(-(x.array() + a).square().sum());
    Jacobian j(2, x.size());
    j.row(0) = (2.0 * e1) * (x.array() - a).matrix().transpose();
    j.row(1) = (2.0 * e2) * (x.array() + a).matrix().transpose();
    return j;
  };
  return p;
}

// Four-bar-truss shaped pair: linear volume term against compliance-like
// reciprocals. The box keeps all coordinates strictly positive.
MultiObjectiveProblem make_sd() {
  const double r2 = std::sqrt(2.0);
  Vector lower(4), upper(4);
  lower << 1.0, r2, r2, 1.0;
  upper << 3.0, 3.0, 3.0, 3.0;
  auto p = base("SD", 4, 2, std::move(lower), std::move(upper), true);
  p.eval = [r2](const Vector& x) {
    Vector f(2);
    f << 2.0 * x[0] + r2 * x[1] + r2 * x[2] + x[3],
        2.0 / x[0] + 2.0 * r2 / x[1] + 2.0 * r2 / x[2] + 2.0 / x[3];
    return f;
  };
  p.jac = [r2](const Vector& x) {
    Jacobian j(2, 4);
    j.row(0) << 2.0, r2, r2, 1.0;
    j.row(1) << -2.0 / (x[0] * x[0]), -2.0 * r2 / (x[1] * x[1]), -2.0 * r2 / (x[2] * x[2]),
        -2.0 / (x[3] * x[3]);
    return j;
  };
  return p;
}

// F1 = x1^2 + x2^2 + 1, F2 = 0.5 ((x1 - x2)^2 + (x3 - x4)^2) + 1.
MultiObjectiveProblem make_toi4() {
  auto p = base("Toi4", 4, 2, constant_vec(4, -2), constant_vec(4, 5), true);
  p.eval = [](const Vector& x) {
    Vector f(2);
    const double u = x[0] - x[1];
    const double w = x[2] - x[3];
    f << x[0] * x[0] + x[1] * x[1] + 1.0, 0.5 * (u * u + w * w) + 1.0;
    return f;
  };
  p.jac = [](const Vector& x) {
    const double u = x[0] - x[1];
    const double w = x[2] - x[3];
    Jacobian j(2, 4);
    j.row(0) << 2.0 * x[0], 2.0 * x[1], 0.0, 0.0;
    j.row(1) << u, -u, w, -w;
    return j;
  };
  return p;
}

// F1 = sin(x), F2 = sin(x + 0.7).
MultiObjectiveProblem make_dgo1() {
  auto p = base("DGO1", 1, 2, constant_vec(1, -10), constant_vec(1, 13), false);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << std::sin(x[0]), std::sin(x[0] + 0.7);
    return f;
  };
  p.jac = [](const Vector& x) {
    Jacobian j(2, 1);
    j << std::cos(x[0]), std::cos(x[0] + 0.7);
    return j;
  };
  return p;
}

// F1 = x^2, F2 = 9 - sqrt(81 - x^2); only defined on |x| <= 9, which the
// componentwise line-search test rejects automatically outside.
MultiObjectiveProblem make_dgo2() {
  auto p = base("DGO2", 1, 2, constant_vec(1, -9), constant_vec(1, 9), true);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << x[0] * x[0], 9.0 - std::sqrt(81.0 - x[0] * x[0]);
    return f;
  };
  p.jac = [](const Vector& x) {
    Jacobian j(2, 1);
    j << 2.0 * x[0], x[0] / std::sqrt(81.0 - x[0] * x[0]);
    return j;
  };
  return p;
}

// Sums of sharp Gaussian bumps; many local Pareto-critical basins.
MultiObjectiveProblem make_far1() {
  struct Bump {
    double c, s, a, b;
  };
  static constexpr Bump f1_terms[] = {{-2, 15, 0.1, 0.0},
                                      {-1, 20, 0.6, 0.6},
                                      {1, 20, -0.6, 0.6},
                                      {1, 20, 0.6, -0.6},
                                      {1, 20, -0.6, -0.6}};
  static constexpr Bump f2_terms[] = {{2, 20, 0.0, 0.0},
                                      {1, 20, 0.4, 0.6},
                                      {-1, 20, -0.5, 0.7},
                                      {-1, 20, 0.5, -0.7},
                                      {1, 20, -0.4, -0.8}};
  auto value = [](const Bump* terms, const Vector& x) {
    double total = 0;
    for (int t = 0; t < 5; ++t) {
      const Bump& u = terms[t];
      const double dx = x[0] - u.a;
      const double dy = x[1] - u.b;
      total += u.c * std::exp(u.s * (-dx * dx - dy * dy));
    }
    return total;
  };
  auto grad = [](const Bump* terms, const Vector& x) {
    double gx = 0, gy = 0;
    for (int t = 0; t < 5; ++t) {
      const Bump& u = terms[t];
      const double dx = x[0] - u.a;
      const double dy = x[1] - u.b;
      const double e = u.c * std::exp(u.s * (-dx * dx - dy * dy)) * u.s;
      gx += e * (-2.0 * dx);
      gy += e * (-2.0 * dy);
    }
    return std::pair<double, double>(gx, gy);
  };
  auto p = base("Far1", 2, 2, constant_vec(2, -1), constant_vec(2, 1), false);
  p.eval = [value](const Vector& x) {
    Vector f(2);
    f << value(f1_terms, x), value(f2_terms, x);
    return f;
  };
  p.jac = [grad](const Vector& x) {
    Jacobian j(2, 2);
    const auto g1 = grad(f1_terms, x);
    const auto g2 = grad(f2_terms, x);
    j.row(0) << g1.first, g1.second;
    j.row(1) << g2.first, g2.second;
    return j;
  };
  return p;
}

// F1 = 5 - sum of shifted squares, F2 = sum sin(xi) / (1 + ||x||^2 / 100).
MultiObjectiveProblem make_sk2() {
  auto p = base("SK2", 4, 2, constant_vec(4, -10), constant_vec(4, 10), false);
  const double shift[4] = {2.0, -3.0, 5.0, 4.0};
  p.eval = [shift](const Vector& x) {
    double q = 0;
    for (int i = 0; i < 4; ++i) q += (x[i] - shift[i]) * (x[i] - shift[i]);
    const double s = x.array().sin().sum();
    const double d = 1.0 + x.squaredNorm() / 100.0;
    Vector f(2);
    f << -q + 5.0, s / d;
    return f;
  };
  p.jac = [shift](const Vector& x) {
    const double s = x.array().sin().sum();
    const double d = 1.0 + x.squaredNorm() / 100.0;
    Jacobian j(2, 4);
    for (int i = 0; i < 4; ++i) {
      j(0, i) = -2.0 * (x[i] - shift[i]);
      j(1, i) = std::cos(x[i]) / d - s * x[i] / (50.0 * d * d);
    }
    return j;
  };
  return p;
}

// F1 = x1^4 + x2^4 - x1^2 + x2^2 - 10 x1 x2 + 0.25 x1 + 20, F2 = (x1-1)^2 + x2^2.
MultiObjectiveProblem make_pnr() {
  auto p = base("PNR", 2, 2, constant_vec(2, -1), constant_vec(2, 1), true);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << std::pow(x[0], 4) + std::pow(x[1], 4) - x[0] * x[0] + x[1] * x[1] -
             10.0 * x[0] * x[1] + 0.25 * x[0] + 20.0,
        (x[0] - 1.0) * (x[0] - 1.0) + x[1] * x[1];
    return f;
  };
  p.jac = [](const Vector& x) {
    Jacobian j(2, 2);
    j.row(0) << 4.0 * std::pow(x[0], 3) - 2.0 * x[0] - 10.0 * x[1] + 0.25,
        4.0 * std::pow(x[1], 3) + 2.0 * x[1] - 10.0 * x[0];
    j.row(1) << 2.0 * (x[0] - 1.0), 2.0 * x[1];
    return j;
  };
  return p;
}

// F1 = x1^3, F2 = (x2 - x1)^3.
MultiObjectiveProblem make_mmr3() {
  auto p = base("MMR3", 2, 2, constant_vec(2, -1), constant_vec(2, 1), false);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << std::pow(x[0], 3), std::pow(x[1] - x[0], 3);
    return f;
  };
  p.jac = [](const Vector& x) {
    const double u = x[1] - x[0];
    Jacobian j(2, 2);
    j.row(0) << 3.0 * x[0] * x[0], 0.0;
    j.row(1) << -3.0 * u * u, 3.0 * u * u;
    return j;
  };
  return p;
}

// F1 = 1 - exp(-(x1-1)^2 - (x2+1)^2), F2 mirrored across the origin.
MultiObjectiveProblem make_ff1() {
  auto p = base("FF1", 2, 2, constant_vec(2, -1), constant_vec(2, 1), false);
  p.eval = [](const Vector& x) {
    Vector f(2);
    f << 1.0 - std::exp(-(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 1.0) * (x[1] + 1.0)),
        1.0 - std::exp(-(x[0] + 1.0) * (x[0] + 1.0) - (x[1] - 1.0) * (x[1] - 1.0));
    return f;
  };
  p.jac = [](const Vector& x) {
    const double e1 = std::exp(-(x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 1.0) * (x[1] + 1.0));
    const double e2 = std::exp(-(x[0] + 1.0) * (x[0] + 1.0) - (x[1] - 1.0) * (x[1] - 1.0));
    Jacobian j(2, 2);
    j.row(0) << 2.0 * e1 * (x[0] - 1.0), 2.0 * e1 * (x[1] + 1.0);
    j.row(1) << 2.0 * e2 * (x[0] + 1.0), 2.0 * e2 * (x[1] - 1.0);
    return j;
  };
  return p;
}

// F1 = (1/n) sum xi^2, F2 = (1/n) sum (xi - 2)^2; Jacobian Lipschitz
// constant 2/n in the row-max norm.
MultiObjectiveProblem make_jos1(const char* name, int n) {
  auto p = base(name, n, 2, constant_vec(n, -100), constant_vec(n, 100), true);
  const double inv_n = 1.0 / static_cast<double>(n);
  p.eval = [inv_n](const Vector& x) {
    Vector f(2);
    f << inv_n * x.squaredNorm(), inv_n * (x.array() - 2.0).matrix().squaredNorm();
    return f;
  };
  p.jac = [inv_n](const Vector& x) {
    Jacobian j(2, x.size());
    j.row(0) = (2.0 * inv_n) * x.transpose();
    j.row(1) = (2.0 * inv_n) * (x.array() - 2.0).matrix().transpose();
    return j;
  };
  return p;
}

struct Entry {
  ProblemInfo info;
  std::function<MultiObjectiveProblem()> build;  // null for metadata-only rows
};

ProblemInfo info_of(const MultiObjectiveProblem& p, const char* source) {
  return ProblemInfo{p.name, source, p.n, p.m, p.convex, p.lower, p.upper, true};
}

ProblemInfo stub(const char* name, const char* source, int n, int m, bool convex, Vector lower,
                 Vector upper) {
  return ProblemInfo{name, source, n, m, convex, std::move(lower), std::move(upper), false};
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&t](const char* source, std::function<MultiObjectiveProblem()> build) {
      t.push_back(Entry{info_of(build(), source), std::move(build)});
    };
    auto add_stub = [&t](ProblemInfo info) { t.push_back(Entry{std::move(info), nullptr}); };

    add("Ansary & Panda (2015)", make_ap_ex);
    add_stub(stub("AP3", "Ansary & Panda (2015)", 2, 2, true, constant_vec(2, -100),
                  constant_vec(2, 100)));
    add("Huband et al. (2006)", make_sk2);
    add_stub(stub("DD1", "Das & Dennis (1998)", 5, 2, false, constant_vec(5, -20),
                  constant_vec(5, 20)));
    add("Huband et al. (2006)", make_dgo1);
    add("Huband et al. (2006)", make_dgo2);
    add("Toint (1983)", make_toi4);
    add("Huband et al. (2006)", make_far1);
    add("Huband et al. (2006)", make_bk1);
    add_stub(stub("LE1", "Huband et al. (2006)", 2, 2, false, constant_vec(2, -5),
                  constant_vec(2, 10)));
    add_stub(stub("SLC2", "Schuetze et al. (2011)", 10, 2, true, constant_vec(10, -3),
                  constant_vec(10, 3)));
    add("Stadler & Dauer (1993)", make_sd);
    add("Huband et al. (2006)", make_mop2);
    add_stub(stub("MOP3", "Huband et al. (2006)", 2, 2, false, constant_vec(2, -M_PI),
                  constant_vec(2, M_PI)));
    add("Preuss et al. (2006)", make_pnr);
    add_stub(stub("VU1", "Huband et al. (2006)", 2, 2, false, constant_vec(2, -3),
                  constant_vec(2, 3)));
    add_stub(stub("KW2", "Kim & de Weck (2005)", 2, 2, false, constant_vec(2, -3),
                  constant_vec(2, 3)));
    add_stub(stub("MMR1", "Miglierina et al. (2008)", 2, 2, false,
                  (Vector(2) << 0.1, 0.0).finished(), constant_vec(2, 1)));
    add("Miglierina et al. (2008)", make_mmr3);
    add_stub(stub("Lov3", "Lovison (2011)", 2, 2, false, constant_vec(2, -20),
                  constant_vec(2, 20)));
    add_stub(stub("Lov4", "Lovison (2011)", 2, 2, false, constant_vec(2, -20),
                  constant_vec(2, 20)));
    add_stub([] {
      Vector lower = constant_vec(6, -0.16);
      Vector upper = constant_vec(6, 0.16);
      lower[0] = -0.1;
      upper[0] = 0.425;
      return stub("Lov6", "Lovison (2011)", 6, 2, false, std::move(lower), std::move(upper));
    }());
    add("Huband et al. (2006)", make_ff1);
    add_stub(stub("FF1a", "Huband et al. (2006)", 100, 2, false, constant_vec(100, -10),
                  constant_vec(100, 10)));
    add_stub(stub("FF1b", "Huband et al. (2006)", 200, 2, false, constant_vec(200, -10),
                  constant_vec(200, 10)));
    add("Jin et al. (2001)", [] { return make_jos1("JOS1a", 50); });
    add("Jin et al. (2001)", [] { return make_jos1("JOS1b", 100); });
    add("Jin et al. (2001)", [] { return make_jos1("JOS1c", 200); });
    add("Jin et al. (2001)", [] { return make_jos1("JOS1d", 500); });
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<ProblemInfo>& catalog() {
  static const std::vector<ProblemInfo> rows = [] {
    std::vector<ProblemInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return rows;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& e : entries()) {
    if (e.build) names.push_back(e.info.name);
  }
  return names;
}

const ProblemInfo* find_info(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.info.name == name) return &e.info;
  }
  return nullptr;
}

MultiObjectiveProblem make_problem(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.info.name == name) {
      if (!e.build)
        throw std::invalid_argument("problem '" + name + "' is catalog-only (no implementation)");
      return e.build();
    }
  }
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<Vector> sample_starts(const MultiObjectiveProblem& problem, int count,
                                  std::uint64_t seed) {
  std::vector<Vector> starts;
  starts.reserve(count);
  for (int i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, problem.name, static_cast<std::uint64_t>(i));
    Vector x(problem.n);
    for (int j = 0; j < problem.n; ++j) x[j] = rng.uniform(problem.lower[j], problem.upper[j]);
    starts.push_back(std::move(x));
  }
  return starts;
}

ScaledProblem scale_at(const MultiObjectiveProblem& base, const Vector& x0) {
  const Jacobian j0 = jac_checked(base, x0);
  Vector r(base.m);
  for (int i = 0; i < base.m; ++i)
    r[i] = 1.0 / std::max(1.0, j0.row(i).lpNorm<Eigen::Infinity>());

  ScaledProblem out;
  out.factors = r;
  out.problem = base;
  auto eval = base.eval;
  auto jac = base.jac;
  out.problem.eval = [eval, r](const Vector& x) -> Vector { return r.array() * eval(x).array(); };
  out.problem.jac = [jac, r](const Vector& x) -> Jacobian { return r.asDiagonal() * jac(x); };
  return out;
}

}  // namespace momograd
