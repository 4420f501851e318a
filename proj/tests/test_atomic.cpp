// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "polycomplex/atomic.hpp"
#include "polycomplex/elements.hpp"
#include "polycomplex/error.hpp"
#include "polycomplex/serialize.hpp"

using namespace polycomplex;

TEST_CASE("sample_sphere: norms and ambient dimension") {
  Rng rng = make_stream(0, 0, 0);
  const Eigen::MatrixXd circle = sample_sphere(1, 1.0, 4, rng);
  REQUIRE(circle.rows() == 4);
  REQUIRE(circle.cols() == 2);
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(std::abs(circle.row(i).norm() - 1.0) <= 1e-12);
  const Eigen::MatrixXd s3 = sample_sphere(3, 1.0, 17, rng);
  CHECK(s3.cols() == 4);
  CHECK_THROWS_AS(sample_sphere(2, 0.0, 3, rng), Error);
}

TEST_CASE("sample_sphere: empirical mean within a Monte-Carlo confidence band") {
  Rng rng = make_stream(7, 0, 0);
  const double r = 0.8;
  const int n = 1000;
  const Eigen::MatrixXd x = sample_sphere(2, r, n, rng);
  for (Eigen::Index i = 0; i < n; ++i)
    CHECK(std::abs(x.row(i).norm() - r) <= 1e-12 * r);
  // each coordinate of a uniform point on S^2 of radius r has variance r^2/3
  const double sigma = r / std::sqrt(3.0);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  for (Eigen::Index c = 0; c < 3; ++c)
    CHECK(std::abs(mean(c)) < 3.0 * sigma / std::sqrt(double(n)));
}

TEST_CASE("GUE force matrix") {
  Rng rng = make_stream(3, 0, 3);
  const Eigen::MatrixXcd one = init_force_matrix(1, ForceMatrixMode::Gue, rng);
  CHECK(one(0, 0).imag() == 0.0);
  Rng again = make_stream(3, 0, 3);
  CHECK(init_force_matrix(1, ForceMatrixMode::Gue, again)(0, 0) == one(0, 0));

  Rng big = make_stream(5, 0, 3);
  const Eigen::MatrixXcd H = init_force_matrix(50, ForceMatrixMode::Gue, big);
  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  // off-diagonal E|H_ij|^2 = 1/2 + 1/2 ... semicircle radius 2*sqrt(n*c) with c = E|H_ij|^2 = 1
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const double edge = 2.0 * std::sqrt(50.0);
  CHECK(es.eigenvalues().maxCoeff() < 1.2 * edge);
  CHECK(es.eigenvalues().minCoeff() > -1.2 * edge);
  CHECK(es.eigenvalues().maxCoeff() > 0.7 * edge);
  CHECK(es.eigenvalues().minCoeff() < -0.7 * edge);
}

TEST_CASE("provided force matrix is validated") {
  Rng rng = make_stream(0, 0, 3);
  Eigen::MatrixXcd good(2, 2);
  good << 1.0, std::complex<double>(0.5, 1.0), std::complex<double>(0.5, -1.0), 2.0;
  CHECK(init_force_matrix(2, ForceMatrixMode::Provided, rng, &good) == good);
  Eigen::MatrixXcd bad = good;
  bad(0, 1) = 3.0;
  try {
    init_force_matrix(2, ForceMatrixMode::Provided, rng, &bad);
    FAIL("non-Hermitian matrix accepted");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NonHermitianProvided);
  }
}

TEST_CASE("1s wavefunction: norm and radial expectation by quadrature") {
  const Wavefunction w = Wavefunction::hydrogen_1s(1.0);
  CHECK(std::abs(wavefunction_norm(w) - 1.0) < 1e-6);
  CHECK(std::abs(radial_expectation(w) - 1.5) < 1e-6);
  const Wavefunction w2 = Wavefunction::hydrogen_1s(2.0);
  CHECK(std::abs(radial_expectation(w2) - 3.0) < 1e-6);
}

TEST_CASE("update_distances") {
  const Wavefunction w = Wavefunction::hydrogen_1s(1.0);
  std::vector<ElectronCell> one{{0, w, 1.5}};
  Eigen::MatrixXd D = Eigen::MatrixXd::Ones(1, 1);
  update_distances(D, one, 0);
  CHECK(D(0, 0) == 0.0);
  std::vector<ElectronCell> two{{0, w, 1.5}, {1, w, 1.5}};
  Eigen::MatrixXd D2 = Eigen::MatrixXd::Ones(2, 2);
  update_distances(D2, two, 0);
  CHECK(D2(0, 1) == 0.0);
  CHECK(D2(1, 0) == 0.0);
  std::vector<ElectronCell> mixed{{0, w, 1.5}, {1, w, 3.0}};
  Eigen::MatrixXd D3 = Eigen::MatrixXd::Zero(2, 2);
  update_distances(D3, mixed, 1);
  CHECK(D3(0, 1) == 1.5);
  CHECK_THROWS_AS(update_distances(D3, mixed, 2), Error);
}

TEST_CASE("deuterium with default dimensions") {
  const AtomicComplex a = build_atomic_complex(AtomSpec::from(lookup("H", 2)), AtomicConfig{});
  CHECK(a.K.size() == 3);
  REQUIRE(a.proton_cells.size() == 1);
  REQUIRE(a.neutron_cells.size() == 1);
  REQUIRE(a.electron_cells.size() == 1);
  CHECK(a.K.cell(a.proton_cells[0]).dim == 3);
  CHECK(a.K.cell(a.neutron_cells[0]).dim == 3);
  CHECK(a.K.cell(a.electron_cells[0]).dim == 0);
  CHECK(a.D_F.rows() == 2);
  CHECK(a.D_F.cols() == 2);
  CHECK(a.D_E.rows() == 1);
}

TEST_CASE("hydrogen has no neutron cells") {
  const AtomicComplex a = build_atomic_complex(AtomSpec::from(lookup("H")), AtomicConfig{});
  CHECK(a.neutron_cells.empty());
  CHECK(a.D_F.rows() == 1);
  CHECK(a.K.size() == 2);
}

TEST_CASE("carbon in range mode") {
  AtomicConfig cfg;
  cfg.dim_range = 2;
  const AtomicComplex a = build_atomic_complex(AtomSpec::from(lookup("C")), cfg);
  CHECK(a.proton_cells.size() == 18);
  CHECK(a.neutron_cells.size() == 18);
  CHECK(a.electron_cells.size() == 18);
  CHECK(a.K.size() == 54);
  CHECK(a.K.is_closure_finite());
  for (int k = 1; k < a.K.max_dim(); ++k)
    CHECK((Eigen::MatrixXi(a.K.boundary_matrix(k)) * Eigen::MatrixXi(a.K.boundary_matrix(k + 1))).isZero());
}

TEST_CASE("property: payload points respect the radius bounds") {
  AtomicConfig cfg;
  cfg.electron_dim = 2;
  for (const char *sym : {"H", "C", "O", "Fe"}) {
    const AtomicComplex a = build_atomic_complex(AtomSpec::from(lookup(sym)), cfg, {.seed = 9});
    for (const Cell &c : a.K.cells()) {
      for (Eigen::Index i = 0; i < c.points.rows(); ++i) {
        const double norm = c.points.row(i).norm();
        if (c.kind == CellKind::Proton)
          CHECK(norm <= cfg.radius_p_fm * (1 + 1e-9));
        else if (c.kind == CellKind::Neutron)
          CHECK(norm <= cfg.radius_n_fm * (1 + 1e-9));
        else
          CHECK(norm < cfg.radius_e_fm);
      }
      CHECK(c.dim <= std::max({cfg.proton_dim, cfg.neutron_dim, cfg.electron_dim}));
    }
  }
}

TEST_CASE("property: determinism and Hermitian D_F") {
  const AtomSpec o = AtomSpec::from(lookup("O"));
  const auto a = build_atomic_complex(o, AtomicConfig{}, {.seed = 42});
  const auto b = build_atomic_complex(o, AtomicConfig{}, {.seed = 42});
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK((a.D_F - a.D_F.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  const auto c = build_atomic_complex(o, AtomicConfig{}, {.seed = 43});
  CHECK(fingerprint(a) != fingerprint(c));
}

TEST_CASE("property: distinct particle counts give distinct complexes") {
  std::vector<std::string> prints;
  for (const ElementRecord &r : {lookup("H"), lookup("H", 2), lookup("He"), lookup("C"), lookup("N"), lookup("O")})
    prints.push_back(fingerprint(build_atomic_complex(AtomSpec::from(r), AtomicConfig{})));
  for (std::size_t i = 0; i < prints.size(); ++i)
    for (std::size_t j = i + 1; j < prints.size(); ++j)
      CHECK(prints[i] != prints[j]);
}

TEST_CASE("cross-complex links") {
  const auto a = build_atomic_complex(AtomSpec::from(lookup("He")), AtomicConfig{});
  REQUIRE(a.K.links().size() == 2);
  CHECK(a.K.links()[0].label == "phi_n");
  CHECK(a.K.links()[1].label == "phi_e");
}

TEST_CASE("config validation") {
  AtomicConfig cfg;
  cfg.radius_p_fm = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  AtomicConfig neg;
  neg.proton_dim = -1;
  CHECK_THROWS_AS(build_atomic_complex({1, 0, 1}, neg), Error);
}
