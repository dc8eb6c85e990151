#include <doctest.h>

#include <cmath>
#include <cstring>

#include "../support.hpp"
#include "surfpat/error.hpp"
#include "surfpat/patterns.hpp"
#include "surfpat/reaction.hpp"
#include "surfpat/solver.hpp"

using namespace surfpat;

namespace {

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace

TEST_CASE("modified potential") {
  CHECK(modified_potential(1.0, 0.0) == 0.0);
  CHECK(modified_potential(-1.0, 0.0) == 0.0);
  CHECK(modified_potential(0.0, 0.3) == 0.25);
  CHECK(modified_potential(2.0, -0.5) == doctest::Approx(2.25 - 1.0));
  // derivative is f_m(u) = u^3 - u + b
  for (double u : {-1.3, -0.2, 0.4, 1.1}) {
    const double h = 1e-6, b = 0.17;
    const double d = (modified_potential(u + h, b) - modified_potential(u - h, b)) / (2 * h);
    CHECK(d == doctest::Approx(u * u * u - u + b).epsilon(1e-8));
  }
}

TEST_CASE("energy of constant fields is pure potential") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  std::vector<double> u(m.vertex_count(), 0.5);
  const double e = discrete_energy(op, u, 0.1, 0.5);
  CHECK(e == doctest::Approx(op.mass.total() * modified_potential(0.5, 0.1) / 0.25).epsilon(1e-12));
  CHECK_THROWS_AS(discrete_energy(op, std::vector<double>(3), 0.0, 1.0), Error);
}

TEST_CASE("one step is the composition of the substeps") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  SolverConfig c;
  c.b = 0.15;
  c.epsilon = 0.6;
  c.dt = 0.2;
  const auto u0 = random_init(m, 5, 0.8);
  const auto got = strang_step(u0, c, op);
  CHECK(got.time_level == 1);

  auto v = reaction_half_step(u0.values, {0.1, 0.6});
  v = diffusion_step(op, v, 0.2, 0.15, 0.6, c.linear);
  v = reaction_half_step(v, {0.1, 0.6});
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(got.values[i] == v[i]);

  const StrangSplitting scheme(op, c);
  auto w = u0;
  scheme.step_inplace(w);
  CHECK(w.values == got.values);
}

TEST_CASE("with b = 0 the diffusion source vanishes") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  const auto u = random_init(m, 2, 0.5).values;
  const ImplicitDiffusion diff(op, 0.3);
  const auto plain = diff.step(u, 0.0, {});
  const auto via = diffusion_step(op, u, 0.3, 0.0, 0.7);
  CHECK(plain == via);
}

TEST_CASE("energy decreases along a run") {
  const auto m = make_icosphere(3);
  const auto op = build_operator(m);
  for (double b : {-0.2, 0.0, 0.2}) {
    SolverConfig c;
    c.b = b;
    c.dt = 0.1;
    c.max_iterations = 150;
    c.stop_tolerance = 0.0;
    const auto r = run(op, random_init(m, 3, 0.1), c);
    REQUIRE(r.trace.samples.size() == 151);
    for (std::size_t k = 1; k < r.trace.samples.size(); ++k) {
      const double prev = r.trace.samples[k - 1].energy, cur = r.trace.samples[k].energy;
      CHECK(cur <= prev + 1e-6 * std::abs(prev));
    }
    CHECK(r.trace.samples.back().energy < 0.5 * r.trace.samples.front().energy);
  }
}

TEST_CASE("sup-norm control") {
  const auto m = make_icosphere(3);
  const auto op = build_operator(m);
  SUBCASE("b = 0") {
    SolverConfig c;
    c.epsilon = 0.2;
    c.dt = 0.05;
    c.max_iterations = 40;
    c.stop_tolerance = 0.0;
    auto u = random_init(m, 8, 3.0);
    const double bound = std::max(max_abs(u.values), 1.0);
    const StrangSplitting s(op, c);
    for (int n = 0; n < 40; ++n) {
      s.step_inplace(u);
      CHECK(max_abs(u.values) <= bound * (1 + 1e-9));
    }
  }
  SUBCASE("b != 0") {
    SolverConfig c;
    c.b = 0.3;
    c.epsilon = 0.5;
    c.dt = 0.1;
    auto u = random_init(m, 9, 1.5);
    const double base = std::max(max_abs(u.values), 1.0);
    const StrangSplitting s(op, c);
    for (int n = 1; n <= 30; ++n) {
      s.step_inplace(u);
      CHECK(max_abs(u.values) <= base + n * c.dt * std::abs(c.b) / (c.epsilon * c.epsilon) + 1e-9);
    }
  }
}

TEST_CASE("runs are bitwise deterministic") {
  const auto m = make_icosphere(3);
  SolverConfig c;
  c.b = -0.1;
  c.max_iterations = 30;
  const auto a = run(m, random_init(m, 77, 0.3), c);
  const auto b = run(m, random_init(m, 77, 0.3), c);
  REQUIRE(a.field.values.size() == b.field.values.size());
  CHECK(std::memcmp(a.field.values.data(), b.field.values.data(), a.field.values.size() * sizeof(double)) == 0);
  REQUIRE(a.trace.samples.size() == b.trace.samples.size());
  for (std::size_t k = 0; k < a.trace.samples.size(); ++k) {
    CHECK(std::memcmp(&a.trace.samples[k].energy, &b.trace.samples[k].energy, sizeof(double)) == 0);
  }
}

TEST_CASE("trace logging and termination") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  SolverConfig c;
  c.max_iterations = 25;
  c.stop_tolerance = 0.0;
  c.energy_log_stride = 10;
  auto r = run(op, random_init(m, 1, 0.1), c);
  REQUIRE(r.trace.samples.size() == 4);
  CHECK(r.trace.samples[0].step == 0);
  CHECK(r.trace.samples[1].step == 10);
  CHECK(r.trace.samples[2].step == 20);
  CHECK(r.trace.samples[3].step == 25);
  CHECK(r.field.time_level == 25);
  CHECK_FALSE(r.stopped_early);

  c.max_iterations = 100000;
  c.stop_tolerance = 1e-7;
  c.energy_log_stride = 1;
  r = run(op, random_init(m, 1, 0.1), c);
  CHECK(r.stopped_early);
  CHECK(r.field.time_level < 100000);
  CHECK(r.trace.samples.back().step == r.field.time_level);

  // an equilibrium stops after one step
  PhaseField ones{std::vector<double>(m.vertex_count(), 1.0), 0};
  r = run(op, ones, c);
  CHECK(r.stopped_early);
  CHECK(r.field.time_level == 1);
}

TEST_CASE("uniform data follows the scalar reaction to the nearest stable root") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  SolverConfig c;
  c.b = 0.2;
  c.max_iterations = 3000;
  c.stop_tolerance = 0.0;
  c.energy_log_stride = 3000;
  PhaseField u{std::vector<double>(m.vertex_count(), 0.9), 0};
  const auto r = run(op, u, c);
  const double v = r.field.values[0];
  for (double x : r.field.values) CHECK(x == doctest::Approx(v).epsilon(1e-12));
  // upper well of u^3 - u + 0.2, up to the splitting bias at dt = 0.1
  CHECK(v == doctest::Approx(0.8788850662499734).epsilon(2e-3));
}

TEST_CASE("configuration validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = c;
  bad.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.epsilon = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.max_iterations = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.b = std::nan("");
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = c;
  bad.energy_log_stride = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("run errors") {
  const auto m = make_icosphere(2);
  const auto op = build_operator(m);
  SolverConfig c;
  PhaseField wrong{std::vector<double>(5, 0.0), 0};
  CHECK_THROWS_AS(run(op, wrong, c), Error);
  auto u = random_init(m, 1, 0.1);
  u.values[3] = std::nan("");
  CHECK_THROWS_AS(run(op, u, c), Error);

  // a linear solve that cannot converge surfaces as RunError with the state so far
  c.dt = 50.0;
  c.linear = {1e-15, 1};
  try {
    run(op, random_init(m, 1, 0.5), c);
    FAIL("expected RunError");
  } catch (const RunError& e) {
    CHECK(e.kind() == ErrorKind::non_convergence);
    CHECK(e.last_good().time_level == 0);
    CHECK(e.partial_trace().samples.size() == 1);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}
