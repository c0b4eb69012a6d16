#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <fwlab/errors.hpp>
#include <fwlab/field.hpp>
#include <fwlab/grid.hpp>
#include <fwlab/spectral.hpp>

using namespace fwlab;
using cplx = std::complex<double>;

namespace {

// Random real field with spectrum confined to |k| <= band.
Field random_band_limited(const GridPtr& grid, long band, unsigned seed,
                          double amp = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = grid->num_points();
  std::vector<cplx> coeffs(n);
  for (long k = 1; k <= band; ++k) {
    const cplx c(dist(rng), dist(rng));
    coeffs[static_cast<std::size_t>(k)] = amp * c;
    coeffs[n - static_cast<std::size_t>(k)] = amp * std::conj(c);
  }
  coeffs[0] = amp * dist(rng);
  return Field::from_coeffs(grid, std::move(coeffs));
}

Field cosine_mode(const GridPtr& grid, long k, double amp = 1.0) {
  std::vector<cplx> coeffs(grid->num_points());
  coeffs[static_cast<std::size_t>(k)] = 0.5 * amp;
  coeffs[grid->num_points() - static_cast<std::size_t>(k)] = 0.5 * amp;
  return Field::from_coeffs(grid, std::move(coeffs));
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("grid construction validates its arguments") {
  CHECK_THROWS_AS(make_grid(48, 32.0), std::invalid_argument);  // not 2^k
  CHECK_THROWS_AS(make_grid(8, 32.0), std::invalid_argument);   // too small
  CHECK_THROWS_AS(make_grid(64, 0.5), std::invalid_argument);   // short box
}

TEST_CASE("grid geometry") {
  const GridPtr grid = make_grid(64, 2.0);
  CHECK(grid->num_points() == 64);
  CHECK(grid->length() == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  CHECK(grid->x(0) == doctest::Approx(-2.0 * M_PI).epsilon(1e-15));
  CHECK(grid->nyquist() == doctest::Approx(16.0));
  // FFT bin order: 0, 1, ..., N/2-1, then the negative half.
  CHECK(grid->frequency(1) == doctest::Approx(0.5));
  CHECK(grid->frequency(63) == doctest::Approx(-0.5));
  CHECK(grid->signed_index(32) == -32);
  CHECK(grid->frequency(32) == doctest::Approx(-16.0));
}

TEST_CASE("analysis and synthesis invert each other") {
  const GridPtr grid = make_grid(256, 8.0);
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> samples(grid->num_points());
  for (double& v : samples) v = dist(rng);
  const Field u = Field::from_samples(grid, samples);
  const Field back = transform(u, TransformDirection::synthesis);
  CHECK(max_diff(u.samples(), back.samples()) < 1e-13);
}

TEST_CASE("a sampled cosine lands in exactly one coefficient pair") {
  const GridPtr grid = make_grid(128, 4.0);
  std::vector<double> samples(grid->num_points());
  const double xi = 5.0 / 4.0;  // k = 5
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = std::cos(xi * grid->x(i));
  }
  const Field u = Field::from_samples(grid, std::move(samples));
  for (std::size_t bin = 0; bin < u.size(); ++bin) {
    const double expected = std::labs(grid->signed_index(bin)) == 5 ? 0.5 : 0.0;
    CHECK(std::abs(u.coeffs()[bin] - cplx(expected, 0.0)) < 1e-14);
  }
}

TEST_CASE("spectral derivative matches closed forms and finite differences") {
  const GridPtr grid = make_grid(4096, 32.0);

  SUBCASE("single mode, orders 1 through 4") {
    const double xi = 2.5;  // k = 80
    const Field u = cosine_mode(grid, 80);
    for (int order = 1; order <= 4; ++order) {
      const Field du = derivative(u, order);
      double worst = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = grid->x(i);
        const double phase = xi * x + 0.5 * M_PI * order;
        const double exact = std::pow(xi, order) * std::cos(phase);
        worst = std::max(worst, std::fabs(du.samples()[i] - exact));
      }
      CHECK(worst < 1e-10 * std::pow(xi, order));
    }
  }

  SUBCASE("eighth-order finite differences agree on random data") {
    const Field u = random_band_limited(grid, 64, 17u);  // |xi| <= 2
    const Field du = derivative(u);
    const std::size_t n = grid->num_points();
    const double dx = grid->dx();
    static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0,
                                -1.0 / 280.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double fd = 0.0;
      for (int o = 1; o <= 4; ++o) {
        const std::size_t ip = (i + static_cast<std::size_t>(o)) % n;
        const std::size_t im = (i + n - static_cast<std::size_t>(o)) % n;
        fd += w[o - 1] * (u.samples()[ip] - u.samples()[im]);
      }
      fd /= dx;
      worst = std::max(worst, std::fabs(fd - du.samples()[i]));
    }
    CHECK(worst < 1e-6 * u.max_abs());
  }
}

TEST_CASE("multipliers zero the Nyquist bin") {
  const GridPtr grid = make_grid(64, 1.0);
  std::vector<double> samples(grid->num_points());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = (i % 2 == 0) ? 1.0 : -1.0;  // pure Nyquist mode
  }
  const Field u = Field::from_samples(grid, std::move(samples));
  const Field filtered = apply_multiplier(u, [](double) { return cplx(1.0); });
  CHECK(filtered.max_abs() < 1e-14);
}

TEST_CASE("nonlocal velocity") {
  SUBCASE("exact on a single mode: cos(2x) -> -(2/5) sin(2x)") {
    const GridPtr grid = make_grid(256, 1.0);
    const Field u = cosine_mode(grid, 2);
    const Field v = nonlocal_velocity(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double exact = -(2.0 / 5.0) * std::sin(2.0 * grid->x(i));
      worst = std::max(worst, std::fabs(v.samples()[i] - exact));
    }
    CHECK(worst < 1e-14);
  }

  SUBCASE("defining property (1 - d_xx) v = u_x via finite differences") {
    const GridPtr grid = make_grid(4096, 32.0);
    const Field u = random_band_limited(grid, 32, 23u);  // |xi| <= 1
    const Field v = nonlocal_velocity(u);
    const std::size_t n = grid->num_points();
    const double dx = grid->dx();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto at = [&](long off, const Field& f) {
        return f.samples()[(i + n + static_cast<std::size_t>(
                                        (off % static_cast<long>(n)) +
                                        static_cast<long>(n))) %
                           n];
      };
      const double vxx =
          (-at(-2, v) + 16.0 * at(-1, v) - 30.0 * at(0, v) + 16.0 * at(1, v) -
           at(2, v)) /
          (12.0 * dx * dx);
      const double ux =
          (at(-2, u) - 8.0 * at(-1, u) + 8.0 * at(1, u) - at(2, u)) /
          (12.0 * dx);
      worst = std::max(worst, std::fabs(at(0, v) - vxx - ux));
    }
    CHECK(worst < 1e-4 * u.max_abs());
  }
}

TEST_CASE("grid norms against Gaussian quadrature oracles") {
  const GridPtr grid = make_grid(4096, 32.0);
  std::vector<double> narrow(grid->num_points()), wide(grid->num_points());
  for (std::size_t i = 0; i < narrow.size(); ++i) {
    const double x = grid->x(i);
    narrow[i] = std::exp(-x * x);
    wide[i] = std::exp(-0.5 * x * x);
  }
  const Field g1 = Field::from_samples(grid, std::move(narrow));
  const Field g2 = Field::from_samples(grid, std::move(wide));
  // The trapezoid rule is spectrally exact for these analytic decaying
  // profiles, so the integrals pin the dx weighting of lp_norm.
  CHECK(lp_norm(g1, 1.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(lp_norm(g2, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-13));
  CHECK(lp_norm(g1, 2.0) ==
        doctest::Approx(std::pow(0.5 * M_PI, 0.25)).epsilon(1e-13));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(lp_norm(g1, inf) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("two-thirds dealiasing removes exactly the aliased product modes") {
  const GridPtr grid = make_grid(64, 1.0);
  const Field u = cosine_mode(grid, 15);
  const Field v = cosine_mode(grid, 10);
  // cos(15x) cos(10x) = (cos(25x) + cos(5x)) / 2; 3*25 > 64 kills the sum.
  const Field w = dealias(pointwise_product(u, v));
  for (std::size_t bin = 0; bin < w.size(); ++bin) {
    const long k = std::labs(grid->signed_index(bin));
    const double expected = k == 5 ? 0.25 : 0.0;
    CHECK(std::abs(w.coeffs()[bin] - cplx(expected, 0.0)) < 1e-15);
  }
}

TEST_CASE("spectral tail fraction") {
  const GridPtr grid = make_grid(64, 1.0);
  const Field lo = cosine_mode(grid, 5);
  const Field hi = cosine_mode(grid, 25);
  CHECK(spectral_tail_fraction(lo, 2.0 / 3.0) == doctest::Approx(0.0));
  CHECK(spectral_tail_fraction(hi, 2.0 / 3.0) == doctest::Approx(1.0));
  CHECK(spectral_tail_fraction(lo + hi, 2.0 / 3.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spectral_tail_fraction(Field::zero(grid), 0.5) == 0.0);
}

TEST_CASE("field algebra acts on both representations consistently") {
  const GridPtr grid = make_grid(128, 2.0);
  const Field a = random_band_limited(grid, 20, 3u);
  const Field b = random_band_limited(grid, 20, 5u);
  const Field sum = a + 2.0 * b - b;
  double worst = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    worst = std::max(worst, std::fabs(sum.samples()[i] -
                                      (a.samples()[i] + b.samples()[i])));
    worst = std::max(
        worst, std::abs(sum.coeffs()[i] - (a.coeffs()[i] + b.coeffs()[i])));
  }
  CHECK(worst < 1e-14);
}
