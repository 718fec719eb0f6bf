// SPDX-License-Identifier: Apache-2.0
#include "hinreg/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hinreg/error.hpp"
#include "hinreg/tdist.hpp"
#include "parallel.hpp"

namespace hinreg {

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::NoCandidate: return "no-candidate";
    case StopReason::NoImprovement: return "no-improvement";
    case StopReason::SignificanceViolation: return "significance-violation";
  }
  return "unknown";
}

namespace {

/// Column-pivoted Householder QR of the full design (intercept included).
/// Raises Singular when the condition estimate blows past the limit,
/// naming the offending column.
struct PivotedQr {
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<std::vector<double>> r;    // k columns of length k (upper part)
  std::vector<std::vector<double>> vs;   // Householder vectors, from row s
  std::vector<double> betas;             // 2 / v'v per reflector
  std::vector<std::size_t> piv;          // column permutation
  double condition = 0.0;
};

std::string column_label(const DesignMatrix& d, std::size_t full_col) {
  if (d.intercept && full_col == 0) return "<intercept>";
  const std::size_t reg = full_col - (d.intercept ? 1 : 0);
  return reg < d.names.size() ? d.names[reg] : "column " + std::to_string(full_col);
}

PivotedQr qr_factorize(const DesignMatrix& d, double condition_limit) {
  const std::size_t m = d.n_rows;
  const std::size_t k = d.columns.size() + (d.intercept ? 1 : 0);

  // Work copy, column major.
  std::vector<std::vector<double>> a(k);
  std::size_t c = 0;
  if (d.intercept) a[c++] = std::vector<double>(m, 1.0);
  for (const auto& col : d.columns) a[c++] = col;

  PivotedQr qr;
  qr.m = m;
  qr.k = k;
  qr.piv.resize(k);
  std::iota(qr.piv.begin(), qr.piv.end(), std::size_t{0});
  qr.r.assign(k, std::vector<double>(k, 0.0));
  qr.vs.resize(k);
  qr.betas.assign(k, 0.0);

  double max_diag = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    // Pivot on the largest remaining column norm.
    std::size_t best = s;
    double best_norm = -1.0;
    for (std::size_t j = s; j < k; ++j) {
      double n2 = 0.0;
      for (std::size_t i = s; i < m; ++i) n2 += a[j][i] * a[j][i];
      if (n2 > best_norm) {
        best_norm = n2;
        best = j;
      }
    }
    if (best != s) {
      std::swap(a[best], a[s]);
      std::swap(qr.piv[best], qr.piv[s]);
    }

    double sigma = std::sqrt(std::max(best_norm, 0.0));
    const double x0 = a[s][s];
    if (sigma == 0.0) {
      raise(Status::Singular,
            "design is rank deficient: " + column_label(d, qr.piv[s]) +
                " adds no independent variation");
    }
    const double alpha = x0 >= 0.0 ? -sigma : sigma;

    std::vector<double> v(m - s);
    v[0] = x0 - alpha;
    for (std::size_t i = s + 1; i < m; ++i) v[i - s] = a[s][i];
    double vtv = 0.0;
    for (double x : v) vtv += x * x;
    const double beta = vtv > 0.0 ? 2.0 / vtv : 0.0;

    for (std::size_t j = s + 1; j < k; ++j) {
      double w = 0.0;
      for (std::size_t i = s; i < m; ++i) w += v[i - s] * a[j][i];
      w *= beta;
      for (std::size_t i = s; i < m; ++i) a[j][i] -= w * v[i - s];
    }
    a[s][s] = alpha;

    for (std::size_t i = 0; i <= s; ++i) qr.r[s][i] = a[s][i];
    qr.vs[s] = std::move(v);
    qr.betas[s] = beta;

    const double ds = std::fabs(alpha);
    max_diag = std::max(max_diag, ds);
    qr.condition = ds > 0.0 ? max_diag / ds : std::numeric_limits<double>::infinity();
    if (!(qr.condition <= condition_limit)) {
      raise(Status::Singular,
            "design is numerically singular (condition estimate " +
                std::to_string(qr.condition) + "): " + column_label(d, qr.piv[s]) +
                " is collinear with earlier columns");
    }
  }
  return qr;
}

std::vector<double> apply_qt(const PivotedQr& qr, std::vector<double> y) {
  for (std::size_t s = 0; s < qr.k; ++s) {
    const auto& v = qr.vs[s];
    double w = 0.0;
    for (std::size_t i = s; i < qr.m; ++i) w += v[i - s] * y[i];
    w *= qr.betas[s];
    for (std::size_t i = s; i < qr.m; ++i) y[i] -= w * v[i - s];
  }
  return y;
}

std::vector<double> back_substitute(const PivotedQr& qr, std::span<const double> rhs) {
  std::vector<double> z(qr.k, 0.0);
  for (std::size_t i = qr.k; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < qr.k; ++j) s -= qr.r[j][i] * z[j];
    z[i] = s / qr.r[i][i];
  }
  return z;
}

/// Diagonal of (X'X)^-1 in original column order, from R^-1 rows.
std::vector<double> gram_inverse_diag(const PivotedQr& qr) {
  const std::size_t k = qr.k;
  // u[j] holds column j of R^-1.
  std::vector<std::vector<double>> u(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> e(k, 0.0);
    e[j] = 1.0;
    auto col = back_substitute(qr, e);
    u[j] = std::move(col);
  }
  std::vector<double> diag(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < k; ++j) s += u[j][i] * u[j][i];
    diag[qr.piv[i]] = s;
  }
  return diag;
}

}  // namespace

DesignMatrix assemble_design(const CsrMatrix& target,
                             std::span<const RegressorTable> regressors,
                             std::span<const NodeId> source_subset,
                             const FitOptions& opts) {
  if (source_subset.empty()) {
    raise(Status::EmptySubset, "design needs a non-empty source subset");
  }
  for (const auto& reg : regressors) {
    if (reg.table.rows() != target.rows() || reg.table.cols() != target.cols()) {
      raise(Status::ShapeMismatch,
            "regressor '" + reg.name + "' is " + std::to_string(reg.table.rows()) +
                "x" + std::to_string(reg.table.cols()) + " but the response is " +
                std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
    }
  }

  const NodeId hole_row = target.rows() - 1;
  const Index n_targets = opts.drop_holes ? target.cols() - 1 : target.cols();

  DesignMatrix d;
  d.intercept = opts.intercept;
  d.names.reserve(regressors.size());
  for (const auto& reg : regressors) d.names.push_back(reg.name);
  d.columns.assign(regressors.size(), {});

  auto stack = [&](const CsrMatrix& table, std::vector<double>& out, bool index_rows) {
    for (NodeId s : source_subset) {
      if (s >= target.rows()) {
        raise(Status::InvalidArgument,
              "source " + std::to_string(s) + " outside the table");
      }
      if (s == hole_row) continue;  // hole source rows never enter the design
      auto row = table.dense_row(s);
      for (Index t = 0; t < n_targets; ++t) {
        if (!std::isfinite(row[t])) {
          raise(Status::InvalidArgument, "non-finite entry in design input");
        }
        out.push_back(row[t]);
        if (index_rows) d.row_index.emplace_back(s, t);
      }
    }
  };

  stack(target, d.y, true);
  for (std::size_t i = 0; i < regressors.size(); ++i) {
    stack(regressors[i].table, d.columns[i], false);
  }
  d.n_rows = d.y.size();
  if (d.n_rows == 0) {
    raise(Status::EmptySubset, "source subset contains no real sources");
  }
  return d;
}

FitResult ols(const DesignMatrix& d, double condition_limit) {
  const std::size_t m = d.n_rows;
  const std::size_t k = d.columns.size() + (d.intercept ? 1 : 0);
  if (k == 0) raise(Status::InvalidArgument, "model has no parameters to fit");
  if (m <= k) {
    raise(Status::Underdetermined,
          std::to_string(m) + " rows cannot determine " + std::to_string(k) +
              " coefficients");
  }

  const PivotedQr qr = qr_factorize(d, condition_limit);
  const auto qty = apply_qt(qr, d.y);
  const auto z = back_substitute(qr, std::span<const double>(qty.data(), k));

  FitResult fit;
  fit.beta.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) fit.beta[qr.piv[j]] = z[j];
  fit.condition = qr.condition;

  // Residuals from the factored form: rows k..m-1 of Q'y are the residual
  // coordinates, but recompute explicitly to keep the contract literal.
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double pred = d.intercept ? fit.beta[0] : 0.0;
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
      pred += fit.beta[c + (d.intercept ? 1 : 0)] * d.columns[c][i];
    }
    const double e = d.y[i] - pred;
    rss += e * e;
  }
  double mean = 0.0;
  for (double v : d.y) mean += v;
  mean /= static_cast<double>(m);
  double tss = 0.0;
  for (double v : d.y) tss += (v - mean) * (v - mean);

  fit.rss = rss;
  fit.tss = tss;
  fit.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
  fit.dof = m - k;

  const double sigma2 = rss / static_cast<double>(fit.dof);
  const auto gram_diag = gram_inverse_diag(qr);
  fit.p_values.reserve(d.columns.size());
  fit.std_errors.reserve(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const std::size_t full = c + (d.intercept ? 1 : 0);
    const double se2 = sigma2 * gram_diag[full];
    const double se = se2 > 0.0 ? std::sqrt(se2) : 0.0;
    fit.std_errors.push_back(se);
    if (se == 0.0) {
      fit.p_values.push_back(fit.beta[full] == 0.0 ? 1.0 : 0.0);
      continue;
    }
    fit.p_values.push_back(t_sf(fit.beta[full] / se, fit.dof));
  }
  return fit;
}

namespace {

struct CandidateEval {
  bool fitted = false;
  bool admissible = false;
  FitResult fit;
};

DesignMatrix subset_design(const DesignMatrix& base,
                           std::span<const std::size_t> chosen) {
  DesignMatrix d;
  d.n_rows = base.n_rows;
  d.intercept = base.intercept;
  d.y = base.y;
  for (std::size_t i : chosen) {
    d.names.push_back(base.names[i]);
    d.columns.push_back(base.columns[i]);
  }
  return d;
}

}  // namespace

SelectionTrace forward_select(const CsrMatrix& target,
                              std::span<const RegressorTable> candidates,
                              std::span<const NodeId> source_subset,
                              double alpha, const FitOptions& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    raise(Status::InvalidArgument, "alpha must lie in (0, 1]");
  }

  const DesignMatrix base =
      assemble_design(target, candidates, source_subset, opts);

  SelectionTrace trace;
  if (opts.intercept) {
    trace.null_fit = ols(subset_design(base, {}), opts.condition_limit);
  } else {
    // No parameters at all: the null model predicts zero.
    FitResult f;
    for (double v : base.y) f.rss += v * v;
    double mean = 0.0;
    for (double v : base.y) mean += v;
    mean /= static_cast<double>(base.n_rows);
    for (double v : base.y) f.tss += (v - mean) * (v - mean);
    f.r2 = f.tss > 0.0 ? 1.0 - f.rss / f.tss : 0.0;
    f.dof = base.n_rows;
    trace.null_fit = f;
  }

  std::vector<std::size_t> remaining(candidates.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  double current_r2 = trace.null_fit.r2;

  while (true) {
    if (remaining.empty()) {
      trace.stop_reason = StopReason::NoCandidate;
      return trace;
    }

    std::vector<CandidateEval> evals(remaining.size());
    detail::parallel_for(remaining.size(), [&](std::size_t i) {
      std::vector<std::size_t> chosen = trace.selected;
      chosen.push_back(remaining[i]);
      DesignMatrix d = subset_design(base, chosen);
      try {
        evals[i].fit = ols(d, opts.condition_limit);
      } catch (const Error& e) {
        if (e.code() == Status::Singular || e.code() == Status::Underdetermined) {
          return;  // skipped, not fatal
        }
        throw;
      }
      evals[i].fitted = true;
      evals[i].admissible = true;
      for (double p : evals[i].fit.p_values) {
        if (!(p <= alpha)) evals[i].admissible = false;
      }
    });

    std::size_t best = remaining.size();
    bool any_fitted = false;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!evals[i].fitted) continue;
      any_fitted = true;
      if (!evals[i].admissible) continue;
      if (best == remaining.size() || evals[i].fit.r2 > evals[best].fit.r2) {
        best = i;
      }
    }

    if (best == remaining.size()) {
      trace.stop_reason =
          any_fitted ? StopReason::SignificanceViolation : StopReason::NoCandidate;
      return trace;
    }
    if (evals[best].fit.r2 - current_r2 < opts.min_improvement) {
      trace.stop_reason = StopReason::NoImprovement;
      return trace;
    }

    const std::size_t chosen = remaining[best];
    trace.selected.push_back(chosen);
    trace.steps.push_back({chosen, candidates[chosen].name, evals[best].fit});
    current_r2 = evals[best].fit.r2;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
}

SelectionTrace forward_select(const TypedGraph& g, LinkTypeId target_link,
                              const MetaPathSet& candidates,
                              std::span<const NodeId> source_subset,
                              double alpha, const FitOptions& opts) {
  const Schema schema = g.schema();
  MetaPath target_path{{target_link}, {}};
  const PcrwResult target = pcrw(g, target_path);

  const auto tables = pcrw_batch(g, candidates);
  std::vector<RegressorTable> regs;
  regs.reserve(tables.size());
  for (const auto& t : tables) {
    regs.push_back({format_metapath(t.metapath, schema), t.table});
  }
  return forward_select(target.table, regs, source_subset, alpha, opts);
}

RegressorTable aggregate_feature(std::string name,
                                 std::span<const CsrMatrix* const> members,
                                 AggMode mode) {
  if (members.empty()) {
    raise(Status::InvalidArgument, "feature '" + name + "' has no member paths");
  }
  CsrMatrix acc = *members[0];
  for (std::size_t i = 1; i < members.size(); ++i) {
    acc = acc.add(*members[i]);
  }
  if (mode == AggMode::Mean) {
    acc = acc.scaled(1.0 / static_cast<double>(members.size()));
  }
  return {std::move(name), std::move(acc)};
}

std::vector<double> predict(const DesignMatrix& d, const FitResult& fit) {
  const std::size_t off = d.intercept ? 1 : 0;
  if (fit.beta.size() != d.columns.size() + off) {
    raise(Status::ShapeMismatch, "coefficient count does not match the design");
  }
  std::vector<double> out(d.n_rows, d.intercept ? fit.beta[0] : 0.0);
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const double b = fit.beta[c + off];
    for (std::size_t i = 0; i < d.n_rows; ++i) out[i] += b * d.columns[c][i];
  }
  return out;
}

double frozen_r2(const DesignMatrix& d, const FitResult& fit) {
  const auto pred = predict(d, fit);
  double mean = 0.0;
  for (double v : d.y) mean += v;
  mean /= static_cast<double>(d.n_rows);
  double rss = 0.0;
  double tss = 0.0;
  for (std::size_t i = 0; i < d.n_rows; ++i) {
    rss += (d.y[i] - pred[i]) * (d.y[i] - pred[i]);
    tss += (d.y[i] - mean) * (d.y[i] - mean);
  }
  if (tss <= 0.0) {
    raise(Status::DegenerateSplit, "response variance is zero on this subset");
  }
  return 1.0 - rss / tss;
}

std::vector<NodeId> all_real_sources(const CsrMatrix& table) {
  std::vector<NodeId> out(table.rows() - 1);
  std::iota(out.begin(), out.end(), NodeId{0});
  return out;
}

}  // namespace hinreg
