// Copyright 2026 The arrowtime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance driver: runs every acceptance criterion at its stated tolerance
// and runtime budget, printing one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arrowtime/extraction.hpp"
#include "arrowtime/inference.hpp"
#include "arrowtime/recovery.hpp"
#include "oracle.hpp"

using namespace arrowtime;

namespace {

// Collects failed checks and the worst observed deviation.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += ok ? 0 : 1;
  }
  void within(double error, double tol, const std::string& what) {
    worst_ = std::max(worst_, error);
    std::ostringstream os;
    os << what << " error " << error << " > " << tol;
    check(error <= tol, os.str());
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (worst_ > 0.0) os << ", worst deviation " << worst_;
    if (failed_ > 0) {
      os << ", " << failed_ << " failed";
      for (const auto& f : failures_) os << "; " << f;
    }
    return os.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Tally&)> body;
};

double frob(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

Matrix example_m(double) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  return m;
}

Matrix example_r(double a) {
  Matrix r(4, 4);
  r << 4 - 2 * a, 0, a, 0, 0, 0, 0, a, a, 0, 0, 0, 0, a, 0, 2 * a;
  return r / 4.0;
}

Matrix example_r_bar(double a) {
  Matrix r(4, 4);
  r << 4 - 2 * a, a, 0, 0, a, 0, 0, 0, 0, 0, 0, a, 0, 0, a, 2 * a;
  return r / 4.0;
}

Matrix example_m_bar(double a) {
  const double c = a / (4 - 2 * a);
  Matrix m(4, 4);
  m << 1, c, 0, 0, c, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5, 1;
  return m;
}

DensityMatrix ket0() {
  Vector psi(2);
  psi << 1, 0;
  return DensityMatrix::pure(psi);
}

std::size_t full_rank(unsigned n) { return std::size_t{1} << n; }

// Random state whose support lies inside supp(σ).
Matrix state_on_support(const DensityMatrix& sigma, std::uint64_t seed) {
  const EigenSystem es = hermitian_eig(sigma.matrix());
  const double cut = kRankTol * es.values.maxCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > cut) cols.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(cols.size());
  const Matrix g = oracle::random_matrix(cols.size(), cols.size(), seed);
  Matrix basis(es.vectors.rows(), r);
  for (Eigen::Index k = 0; k < r; ++k) basis.col(k) = es.vectors.col(cols[k]);
  const Matrix tau = basis * (g * g.adjoint()) * basis.adjoint();
  return tau / tau.trace();
}

DensityMatrix system_output(const DensityMatrix& rho,
                            const UnitaryDilation& dil) {
  const Dims dims{dil.d_s(), dil.d_e()};
  const std::size_t keep[] = {0};
  return DensityMatrix(
      partial_trace(apply_global(dil, rho).matrix(), dims, keep));
}

void decohering_example(Tally& t) {
  for (double a : {0.2, 0.5, 0.8}) {
    const std::string tag = "a=" + std::to_string(a);
    const DensityMatrix rho(oracle::rho_a(a));
    const CorrelatorTable table =
        correlators_from_process(rho, oracle::decohering_channel());
    const Pdm r = pdm_from_correlators(table, Direction::Forward);
    const Pdm r_bar = pdm_from_correlators(table, Direction::Backward);
    const Marginals marg = marginals(r);
    const ExtractionResult m = extract_choi_sylvester(r, marg.initial);
    const ExtractionResult m_bar = extract_choi_sylvester(r_bar, marg.final);
    t.within(frob(r.matrix(), example_r(a)), 1e-12, tag + " R");
    t.within(frob(r_bar.matrix(), example_r_bar(a)), 1e-12, tag + " R-bar");
    t.within(frob(m.choi.matrix(), example_m(a)), 1e-12, tag + " M");
    t.within(frob(m_bar.choi.matrix(), example_m_bar(a)), 1e-12, tag + " M-bar");

    const RealVector ev =
        hermitian_eigenvalues(m_bar.choi.partial_transpose_input());
    const double expected_low = (1 - std::sqrt(2.0)) / 2;
    const double expected_other =
        0.5 - std::sqrt(a * a + (2 - a) * (2 - a)) / (2 * (2 - a));
    std::vector<double> negatives;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev(k) < 0) negatives.push_back(ev(k));
    }
    t.check(negatives.size() == 2, tag + " two negative eigenvalues");
    if (negatives.size() == 2) {
      const double lo = std::min(expected_low, expected_other);
      const double hi = std::max(expected_low, expected_other);
      t.within(std::abs(negatives[0] - lo), 1e-10, tag + " eigenvalue 1");
      t.within(std::abs(negatives[1] - hi), 1e-10, tag + " eigenvalue 2");
    }
    t.check(infer_arrow(table).verdict == Verdict::Forward, tag + " verdict");
  }
}

void identity_on_zero(Tally& t) {
  const CorrelatorTable table =
      correlators_from_process(ket0(), KrausChannel::identity(2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 2) = expected(2, 1) = 0.5;
  const Pdm r = pdm_from_correlators(table, Direction::Forward);
  const Pdm r_bar = pdm_from_correlators(table, Direction::Backward);
  t.within(frob(r.matrix(), expected), 1e-12, "R");
  t.check(r.matrix() == r_bar.matrix(), "R equals R-bar exactly");

  const ArrowReport rep = infer_arrow(table);
  t.check(rep.verdict == Verdict::Indeterminate, "verdict");
  t.check(rep.rank_rho == 1 && rep.rank_gamma == 1, "marginal ranks");

  const Discrimination d = fine_grained_discriminator(
      ket0(), KrausChannel::identity(2), PauliLabel::parse("X"),
      PauliLabel::parse("Z"));
  auto near = [&](const std::optional<double>& v, double x, const char* what) {
    t.check(v.has_value(), std::string(what) + " defined");
    if (v) t.within(std::abs(*v - x), 1e-10, what);
  };
  near(d.forward.b_given_a[0], 0.0, "forward <B|a=+1>");
  near(d.forward.b_given_a[1], 0.0, "forward <B|a=-1>");
  near(d.forward.a_given_b[0], 0.0, "forward <A|b=+1>");
  near(d.forward.a_given_b[1], 0.0, "forward <A|b=-1>");
  near(d.reversed.b_given_a[0], 1.0, "reversed <B|a=+1>");
  near(d.reversed.b_given_a[1], 1.0, "reversed <B|a=-1>");
  near(d.reversed.a_given_b[0], 0.0, "reversed <A|b=+1>");
  t.check(d.distinguishable, "distinguishable");
}

void closed_form_equivalence(Tally& t) {
  for (unsigned n = 1; n <= 2; ++n) {
    const int count = n == 1 ? 50 : 10;
    for (int k = 0; k < count; ++k) {
      const auto seed = static_cast<std::uint64_t>(31000 + 100 * n + k);
      const DensityMatrix rho =
          oracle::random_density_matrix(n, 1 + seed % full_rank(n), seed);
      const KrausChannel ch =
          oracle::random_cptp_channel(n, 1 + seed % 4, seed + 7);
      const Matrix brute = oracle::brute_force_pdm(rho.matrix(), ch);
      const Pdm fast = pdm_closed_form(rho, cj_from_kraus(ch));
      t.within(frob(brute, fast.matrix()), 1e-10,
               "seed " + std::to_string(seed));
    }
  }
}

void extraction_roundtrip(Tally& t) {
  for (int k = 0; k < 50; ++k) {
    const unsigned n = 1 + k % 2;
    const auto seed = static_cast<std::uint64_t>(32000 + k);
    const std::string tag = "seed " + std::to_string(seed);
    const DensityMatrix rho = oracle::random_density_matrix(n, full_rank(n), seed);
    const KrausChannel ch = oracle::random_cptp_channel(n, 1 + k % 4, seed + 7);
    const ChoiMatrix m = cj_from_kraus(ch);
    const Pdm r = pdm_closed_form(rho, m);

    const ExtractionResult inv = extract_choi_inverse(r, rho);
    const ExtractionResult syl = extract_choi_sylvester(r, rho);
    const ExtractionResult pin = extract_choi_pseudoinverse(r, rho);
    t.within(frob(inv.choi.matrix(), m.matrix()), 1e-8, tag + " inverse");
    t.within(frob(syl.choi.matrix(), m.matrix()), 1e-8, tag + " sylvester");
    t.within(frob(pin.choi.matrix(), m.matrix()), 1e-8, tag + " pinv");
    t.within(frob(inv.choi.matrix(), syl.choi.matrix()), 1e-8, tag + " inv/syl");
    t.within(frob(inv.choi.matrix(), pin.choi.matrix()), 1e-8, tag + " inv/pinv");
    t.within(frob(syl.choi.matrix(), pin.choi.matrix()), 1e-8, tag + " syl/pinv");

    const DensityMatrix gamma(ch.apply(rho.matrix()));
    t.within(swap_vectorization_relation_check(r, rho, gamma), 1e-8,
             tag + " swap relation");
  }
}

void rank_deficient_support(Tally& t) {
  for (int k = 0; k < 20; ++k) {
    const unsigned n = 1 + k % 2;
    const auto seed = static_cast<std::uint64_t>(33000 + k);
    const std::size_t rank = 1 + seed % (full_rank(n) - 1);
    const DensityMatrix rho = oracle::random_density_matrix(n, rank, seed);
    const ChoiMatrix m =
        cj_from_kraus(oracle::random_cptp_channel(n, 1 + k % 3, seed + 7));
    const ExtractionResult res =
        extract_choi_pseudoinverse(pdm_closed_form(rho, m), rho);
    t.check(res.mode == ExtractionMode::Projected,
            "seed " + std::to_string(seed) + " projected");
    for (std::uint64_t j = 0; j < 10; ++j) {
      const Matrix tau = state_on_support(rho, seed * 16 + j);
      t.within(frob(apply_via_cj(res.choi, tau), apply_via_cj(m, tau)), 1e-8,
               "seed " + std::to_string(seed) + " state " + std::to_string(j));
    }
  }
}

void recovery_identity(Tally& t) {
  for (int k = 0; k < 20; ++k) {
    const unsigned n = 1 + k % 2;
    const auto seed = static_cast<std::uint64_t>(34000 + k);
    const KrausChannel ch = oracle::random_cptp_channel(n, 1 + k % 4, seed);
    const UnitaryDilation dil = stinespring_dilation(ch);
    const DensityMatrix rho =
        oracle::random_density_matrix(n, full_rank(n), seed + 7);
    const RecoveryResult res = unitary_dilation_recovery(rho, dil);
    const DensityMatrix gamma = system_output(rho, dil);
    t.within(frob(reduced_reversed_pdm(rho, dil),
                  half_anticommutator(gamma, res.choi_bar.matrix())),
             1e-8, "defining identity seed " + std::to_string(seed));
  }
  for (int k = 0; k < 10; ++k) {
    const auto seed = static_cast<std::uint64_t>(34100 + k);
    const Matrix v = oracle::random_unitary(2, seed);
    const KrausChannel ch = KrausChannel::unitary(v);
    const DensityMatrix rho = oracle::random_density_matrix(1, 2, seed + 7);
    const RecoveryResult res =
        unitary_dilation_recovery(rho, stinespring_dilation(ch));
    t.within(frob(res.choi_bar.matrix(), unitary_reversal_cj(v).matrix()),
             1e-10, "unitary reversal seed " + std::to_string(seed));
    t.check(res.is_t1_psd, "recovered map CP");
    t.check(cj_from_kraus(ch).is_t1_psd(), "forward map CP");
  }
  for (int k = 0; k < 10; ++k) {
    const auto seed = static_cast<std::uint64_t>(34200 + k);
    const DensityMatrix env = oracle::random_density_matrix(1, 2, seed);
    const DensityMatrix rho = oracle::random_density_matrix(1, 2, seed + 7);
    const UnitaryDilation dil(swap_operator(1), 2, 2, env);
    const RecoveryResult res = unitary_dilation_recovery(rho, dil, 1e-8);
    t.within(std::max(0.0, -res.min_eig_t1), 1e-8,
             "SWAP dilation seed " + std::to_string(seed));
  }
}

void theorem_behaviour(Tally& t) {
  auto mirrored_ok = [&](const CorrelatorTable& table, const std::string& tag) {
    const ArrowReport fwd = infer_arrow(table);
    const ArrowReport bwd = infer_arrow(table.swapped());
    t.check(bwd.verdict == mirrored(fwd.verdict), tag + " mirrored verdict");
    t.check(fwd.arrow_measure.has_value() && bwd.arrow_measure.has_value(),
            tag + " measure defined");
    if (fwd.arrow_measure && bwd.arrow_measure) {
      t.within(std::abs(*fwd.arrow_measure + *bwd.arrow_measure), 1e-9,
               tag + " sign flip");
    }
    return fwd;
  };

  for (int k = 0; k < 20; ++k) {
    const unsigned n = 1 + k % 2;
    const auto seed = static_cast<std::uint64_t>(35000 + k);
    const DensityMatrix rho = oracle::random_density_matrix(n, full_rank(n), seed);
    const KrausChannel ch =
        KrausChannel::unitary(oracle::random_unitary(full_rank(n), seed + 7));
    const std::string tag = "unitary seed " + std::to_string(seed);
    const ArrowReport rep = mirrored_ok(correlators_from_process(rho, ch), tag);
    t.check(rep.verdict == Verdict::Either, tag + " verdict");
    if (rep.arrow_measure) {
      t.within(std::abs(*rep.arrow_measure), 1e-9, tag + " |A|");
    }
  }

  // Complete dephasing followed by amplitude damping, on the example state and
  // on random full-rank inputs.
  auto damping = [](double g) {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    return std::vector<Matrix>{k0, k1};
  };
  std::vector<std::pair<DensityMatrix, KrausChannel>> cases;
  for (double a : {0.2, 0.5, 0.8}) {
    cases.emplace_back(DensityMatrix(oracle::rho_a(a)),
                       oracle::decohering_channel());
  }
  const KrausChannel dephase = oracle::decohering_channel();
  for (int k = 0; k < 8; ++k) {
    std::vector<Matrix> ops;
    for (const Matrix& d : damping(0.1 + 0.1 * k)) {
      for (const Matrix& p : dephase.ops()) {
        ops.push_back(d * p);
      }
    }
    cases.emplace_back(oracle::random_density_matrix(1, 2, 35100 + k),
                       KrausChannel(ops));
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const std::string tag = "decohering case " + std::to_string(k);
    const ArrowReport rep = mirrored_ok(
        correlators_from_process(cases[k].first, cases[k].second), tag);
    t.check(rep.verdict == Verdict::Forward, tag + " verdict");
    t.check(rep.arrow_measure.value_or(0.0) > 0.0, tag + " A > 0");
  }
}

void petz_comparison(Tally& t) {
  for (int k = 0; k < 20; ++k) {
    const unsigned n = 1 + k % 2;
    const auto seed = static_cast<std::uint64_t>(36000 + k);
    const DensityMatrix rho = oracle::random_density_matrix(n, full_rank(n), seed);
    const ChoiMatrix m =
        cj_from_kraus(oracle::random_cptp_channel(n, 1 + k % 4, seed + 7));
    const RecoveryResult petz = petz_reversal_cj(rho, m);
    t.within(std::max(0.0, -petz.min_eig_t1), 1e-8,
             "Petz seed " + std::to_string(seed));
  }
  const DensityMatrix rho(oracle::rho_a(0.5));
  const KrausChannel ch = oracle::decohering_channel();
  const RecoveryResult petz = petz_reversal_cj(rho, cj_from_kraus(ch));
  const RecoveryResult dil =
      unitary_dilation_recovery(rho, stinespring_dilation(ch));
  t.check(frob(petz.choi_bar.matrix(), dil.choi_bar.matrix()) > 1e-2,
          "Petz and dilation recoveries differ");
}

void entropy_inequality(Tally& t) {
  for (int k = 0; k < 100; ++k) {
    const auto seed = static_cast<std::uint64_t>(37000 + k);
    const unsigned n_env = 1 + k % 2;
    const std::size_t d_e = full_rank(n_env);
    const DensityMatrix rho = oracle::random_density_matrix(1, 1 + k % 2, seed);
    const DensityMatrix env =
        oracle::random_density_matrix(n_env, 1 + (k / 2) % d_e, seed + 7);
    const UnitaryDilation dil(oracle::random_unitary(2 * d_e, seed + 13), 2,
                              d_e, env);
    const double delta = entropy_balance(rho, dil).delta;
    t.within(std::max(0.0, -delta), 1e-9, "seed " + std::to_string(seed));
  }
  for (int k = 0; k < 20; ++k) {
    const auto seed = static_cast<std::uint64_t>(37200 + k);
    const Matrix v = oracle::random_unitary(2, seed);
    const DensityMatrix rho = oracle::random_density_matrix(1, 1 + k % 2, seed + 7);
    const bool with_env = k % 2 == 1;
    const DensityMatrix env = with_env
                                  ? oracle::random_density_matrix(1, 2, seed + 13)
                                  : DensityMatrix(Matrix::Identity(1, 1));
    const std::size_t d_e = with_env ? 2 : 1;
    const UnitaryDilation dil(kron(v, identity(d_e)), 2, d_e, env);
    t.within(std::abs(entropy_balance(rho, dil).delta), 1e-9,
             "trivial seed " + std::to_string(seed));
  }
}

void oracle_gate(Tally& t) {
  for (int k = 0; k < 200; ++k) {
    const auto seed = static_cast<std::uint64_t>(38000 + k);
    const DensityMatrix rho = oracle::random_density_matrix(1, 1 + k % 2, seed);
    const KrausChannel ch = oracle::random_cptp_channel(1, 1 + k % 4, seed + 7);
    const CorrelatorTable fast = correlators_from_process(rho, ch);
    for (const auto& e : fast.entries()) {
      t.within(std::abs(oracle::brute_force_correlator(rho.matrix(), ch, e.a,
                                                       e.b) -
                        e.value),
               1e-12, "seed " + std::to_string(seed) + " " + e.a.str() + "," +
                          e.b.str());
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "decohering example reproduction", 1.0, decohering_example},
      {2, "identity channel on |0>", 1.0, identity_on_zero},
      {3, "closed-form PDM equivalence", 30.0, closed_form_equivalence},
      {4, "extraction roundtrip and solver agreement", 60.0,
       extraction_roundtrip},
      {5, "rank-deficient support recovery", 30.0, rank_deficient_support},
      {6, "recovery-map defining identity", 60.0, recovery_identity},
      {7, "arrow inference behaviour", 30.0, theorem_behaviour},
      {8, "Petz comparison", 30.0, petz_comparison},
      {9, "entropy inequality", 30.0, entropy_inequality},
      {10, "oracle gate", 60.0, oracle_gate},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(tally);
    } catch (const std::exception& e) {
      tally.check(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    tally.check(seconds <= c.budget_seconds, "runtime budget exceeded");
    const bool ok = tally.ok();
    failed += ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%s; %.3f s of %.0f s)\n",
                ok ? "PASS" : "FAIL", c.id, c.name, tally.summary().c_str(),
                seconds, c.budget_seconds);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
