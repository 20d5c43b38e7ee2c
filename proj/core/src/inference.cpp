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

#include "arrowtime/inference.hpp"

#include <cmath>
#include <sstream>

#include "arrowtime/errors.hpp"

namespace arrowtime {

namespace {

constexpr double kSign[2] = {1.0, -1.0};

std::string format_residual(const char* which, double value) {
  std::ostringstream os;
  os << which << " extraction residual " << value << " exceeds "
     << kCorruptResidual << "; no state and linear map reproduce the table";
  return os.str();
}

// Every defined entry of `x` agrees with the matching defined entry of `y`.
bool agrees(const ConditionalExpectations& x, const ConditionalExpectations& y,
            double tol) {
  auto same = [tol](const std::optional<double>& p,
                    const std::optional<double>& q) {
    return !p || !q || std::abs(*p - *q) <= tol;
  };
  for (int k = 0; k < 2; ++k) {
    if (!same(x.b_given_a[k], y.b_given_a[k])) return false;
    if (!same(x.a_given_b[k], y.a_given_b[k])) return false;
  }
  return true;
}

Verdict verdict_from_witness(const FineGrainedWitness& w,
                             std::vector<std::string>& notes) {
  if (!w.prediction.distinguishable) {
    notes.emplace_back(
        "fine-grained witness: the two measurement orders predict the same "
        "conditionals");
    return Verdict::Indeterminate;
  }
  const bool fwd = agrees(w.observed, w.prediction.forward, w.tol);
  const bool bwd = agrees(w.observed, w.prediction.reversed, w.tol);
  if (fwd && !bwd) {
    notes.emplace_back(
        "verdict settled by fine-grained conditionals matching the recorded "
        "order");
    return Verdict::Forward;
  }
  if (bwd && !fwd) {
    notes.emplace_back(
        "verdict settled by fine-grained conditionals matching the reversed "
        "order");
    return Verdict::Backward;
  }
  notes.emplace_back(
      "fine-grained witness matches neither measurement order uniquely");
  return Verdict::Indeterminate;
}

JointDistribution joint_in_order(const DensityMatrix& rho,
                                 const KrausChannel& channel,
                                 const PauliLabel& first,
                                 const PauliLabel& second, bool first_is_a) {
  const EigenProjectors p1 = eigenspace_projectors(first);
  const EigenProjectors p2 = eigenspace_projectors(second);
  const Matrix* pre[2] = {&p1.plus, &p1.minus};
  const Matrix* post[2] = {&p2.plus, &p2.minus};

  JointDistribution out;
  for (int i = 0; i < 2; ++i) {
    const Matrix evolved =
        channel.apply((*pre[i]) * rho.matrix() * (*pre[i]));
    for (int j = 0; j < 2; ++j) {
      const double prob =
          std::max(0.0, ((*post[j]) * evolved).trace().real());
      if (first_is_a) {
        out.p[i][j] = prob;
      } else {
        out.p[j][i] = prob;
      }
    }
  }
  return out;
}

void check_labels(const DensityMatrix& rho, const KrausChannel& channel,
                  const PauliLabel& a_label, const PauliLabel& b_label) {
  if (a_label.is_identity() || b_label.is_identity()) {
    throw InvalidArgument("fine-grained measurements need non-identity labels");
  }
  if (rho.dim() != channel.d_in()) {
    throw InvalidArgument("state does not match channel input dimension");
  }
  if ((std::size_t{1} << a_label.n_qubits()) != channel.d_in() ||
      (std::size_t{1} << b_label.n_qubits()) != channel.d_out()) {
    throw InvalidArgument("label width does not match channel dimensions");
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Forward:
      return "FORWARD";
    case Verdict::Backward:
      return "BACKWARD";
    case Verdict::Either:
      return "EITHER";
    case Verdict::Inconsistent:
      return "INCONSISTENT";
    case Verdict::Indeterminate:
      return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

Verdict mirrored(Verdict v) {
  switch (v) {
    case Verdict::Forward:
      return Verdict::Backward;
    case Verdict::Backward:
      return Verdict::Forward;
    default:
      return v;
  }
}

double JointDistribution::coarse_correlator() const {
  double c = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c += kSign[i] * kSign[j] * p[i][j];
  }
  return c;
}

ArrowReport infer_arrow(const CorrelatorTable& table, double psd_tol,
                        const std::optional<FineGrainedWitness>& witness) {
  if (!(psd_tol >= 0.0) || !std::isfinite(psd_tol)) {
    throw InvalidArgument("psd tolerance must be a finite non-negative number");
  }
  const Pdm r = pdm_from_correlators(table, Direction::Forward);
  const Pdm r_bar = pdm_from_correlators(table, Direction::Backward);
  const Marginals marg = marginals(r, psd_tol);
  const DensityMatrix& rho = marg.initial;
  const DensityMatrix& gamma = marg.final;

  ArrowReport report;
  report.psd_tol = psd_tol;
  report.rank_rho = rho.rank();
  report.rank_gamma = gamma.rank();
  const bool full = rho.is_full_rank() && gamma.is_full_rank();

  const ExtractionResult fwd = full ? extract_choi_sylvester(r, rho)
                                    : extract_choi_pseudoinverse(r, rho);
  const ExtractionResult bwd = full ? extract_choi_sylvester(r_bar, gamma)
                                    : extract_choi_pseudoinverse(r_bar, gamma);
  if (fwd.residual > kCorruptResidual) {
    throw CorruptData(format_residual("forward", fwd.residual));
  }
  if (bwd.residual > kCorruptResidual) {
    throw CorruptData(format_residual("backward", bwd.residual));
  }
  report.residual_fwd = fwd.residual;
  report.residual_bwd = bwd.residual;
  report.mode_fwd = fwd.mode;
  report.mode_bwd = bwd.mode;
  report.min_eig_fwd_t1 = fwd.choi.min_eig_t1();
  report.min_eig_bwd_t1 = bwd.choi.min_eig_t1();

  if (!full) {
    report.notes.emplace_back(
        "rank-deficient marginal: extraction is projected onto the support "
        "and the direction is not determined by the table alone");
    report.verdict = witness ? verdict_from_witness(*witness, report.notes)
                             : Verdict::Indeterminate;
    return report;
  }

  const bool fwd_cp = fwd.choi.is_t1_psd(psd_tol);
  const bool bwd_cp = bwd.choi.is_t1_psd(psd_tol);
  if (fwd_cp && !bwd_cp) {
    report.verdict = Verdict::Forward;
  } else if (!fwd_cp && bwd_cp) {
    report.verdict = Verdict::Backward;
    report.notes.emplace_back(
        "only the swapped labeling admits a completely positive map");
  } else if (fwd_cp && bwd_cp) {
    report.verdict = Verdict::Either;
    report.notes.emplace_back(
        "both labelings admit completely positive maps");
  } else {
    report.verdict = Verdict::Inconsistent;
    report.notes.emplace_back(
        "neither labeling admits a completely positive map; see the raw "
        "minimum eigenvalues");
  }
  report.arrow_measure = arrow_measure(fwd.choi, bwd.choi);
  return report;
}

double arrow_measure(const ChoiMatrix& m, const ChoiMatrix& m_bar) {
  return negativity_functional(m_bar.partial_transpose_input()) -
         negativity_functional(m.partial_transpose_input());
}

double arrow_measure(const ExtractionResult& fwd, const ExtractionResult& bwd) {
  if (fwd.mode == ExtractionMode::Projected ||
      bwd.mode == ExtractionMode::Projected) {
    throw Unsupported(
        "arrow measure is undefined for projected (rank-deficient) "
        "extractions");
  }
  return arrow_measure(fwd.choi, bwd.choi);
}

EntropyBalance entropy_balance(const DensityMatrix& rho_s,
                               const UnitaryDilation& dil) {
  if (rho_s.dim() != dil.d_s()) {
    throw InvalidArgument("system state does not match dilation");
  }
  const DensityMatrix joint = apply_global(dil, rho_s);
  const Dims dims{dil.d_s(), dil.d_e()};
  const std::size_t keep_s[] = {0};
  const std::size_t keep_e[] = {1};
  const DensityMatrix s2(partial_trace(joint.matrix(), dims, keep_s));
  const DensityMatrix e2(partial_trace(joint.matrix(), dims, keep_e));

  EntropyBalance out;
  out.delta = von_neumann_entropy(s2) + von_neumann_entropy(e2) -
              von_neumann_entropy(rho_s) - von_neumann_entropy(dil.env_state());
  out.symmetric = std::abs(out.delta) <= 1e-9;
  return out;
}

JointDistribution fine_grained_joint(const DensityMatrix& rho,
                                     const KrausChannel& channel,
                                     const PauliLabel& a_label,
                                     const PauliLabel& b_label) {
  check_labels(rho, channel, a_label, b_label);
  return joint_in_order(rho, channel, a_label, b_label, true);
}

ConditionalExpectations conditionals_from_joint(const JointDistribution& joint,
                                                double min_probability) {
  ConditionalExpectations out;
  for (int i = 0; i < 2; ++i) {
    const double pa = joint.p[i][0] + joint.p[i][1];
    if (pa > min_probability) {
      out.b_given_a[i] = (joint.p[i][0] - joint.p[i][1]) / pa;
    }
    const double pb = joint.p[0][i] + joint.p[1][i];
    if (pb > min_probability) {
      out.a_given_b[i] = (joint.p[0][i] - joint.p[1][i]) / pb;
    }
  }
  return out;
}

Discrimination fine_grained_discriminator(const DensityMatrix& rho,
                                          const KrausChannel& channel,
                                          const PauliLabel& a_label,
                                          const PauliLabel& b_label,
                                          double tol) {
  check_labels(rho, channel, a_label, b_label);
  if (channel.d_in() != channel.d_out()) {
    throw InvalidArgument("reordering measurements needs a square channel");
  }
  Discrimination out;
  out.forward = conditionals_from_joint(
      joint_in_order(rho, channel, a_label, b_label, true));
  out.reversed = conditionals_from_joint(
      joint_in_order(rho, channel, b_label, a_label, false));
  out.distinguishable = !agrees(out.forward, out.reversed, tol);
  return out;
}

}  // namespace arrowtime
