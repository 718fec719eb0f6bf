// SPDX-License-Identifier: Apache-2.0
//
// JSON / CSV renderings of fit traces and cross-validation reports.
#include <json.hpp>
#include <sstream>

#include "hinreg/regress.hpp"
#include "hinreg/validate.hpp"

namespace hinreg {

namespace {

using nlohmann::json;

json fit_to_json(const FitResult& fit, const std::vector<std::string>& names,
                 bool intercept) {
  json model = json::array();
  const std::size_t off = intercept ? 1 : 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    model.push_back({{"name", names[i]},
                     {"coefficient", fit.beta[i + off]},
                     {"p_value", fit.p_values[i]}});
  }
  json out = {{"r2", fit.r2},       {"rss", fit.rss},
              {"tss", fit.tss},     {"dof", fit.dof},
              {"condition", fit.condition}, {"model", model}};
  if (intercept) out["intercept"] = fit.beta[0];
  return out;
}

std::vector<std::string> step_names(const SelectionTrace& trace, std::size_t upto) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= upto; ++i) names.push_back(trace.steps[i].name);
  return names;
}

}  // namespace

std::string selection_trace_to_json(const SelectionTrace& trace, double alpha) {
  json steps = json::array();
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    json step = fit_to_json(trace.steps[i].fit, step_names(trace, i), true);
    step["step"] = i + 1;
    step["added"] = trace.steps[i].name;
    steps.push_back(std::move(step));
  }
  json selected = json::array();
  for (const auto& s : trace.steps) selected.push_back(s.name);
  json out = {
      {"alpha", alpha},
      {"null_model",
       {{"intercept", trace.null_fit.beta.empty() ? 0.0 : trace.null_fit.beta[0]},
        {"r2", trace.null_fit.r2}}},
      {"steps", std::move(steps)},
      {"selected", std::move(selected)},
      {"stop_reason", stop_reason_name(trace.stop_reason)},
      {"final_r2", trace.final_fit().r2},
  };
  return out.dump(2);
}

std::string selection_trace_to_csv(const SelectionTrace& trace) {
  std::ostringstream os;
  os.precision(12);
  os << "step,metapath,coefficient,p_value,r2\n";
  os << "0,<intercept>,"
     << (trace.null_fit.beta.empty() ? 0.0 : trace.null_fit.beta[0]) << ",,"
     << trace.null_fit.r2 << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& fit = trace.steps[i].fit;
    os << (i + 1) << ",<intercept>," << fit.beta[0] << ",," << fit.r2 << "\n";
    for (std::size_t c = 0; c <= i; ++c) {
      os << (i + 1) << "," << trace.steps[c].name << "," << fit.beta[c + 1] << ","
         << fit.p_values[c] << "," << fit.r2 << "\n";
    }
  }
  return os.str();
}

std::string cv_report_to_json(const CvReport& report, const CvConfig& cfg) {
  json splits = json::array();
  for (const auto& s : report.splits) {
    json split = {{"split", s.split},
                  {"n_train", s.train_sources.size()},
                  {"n_test", s.test_sources.size()},
                  {"selected", s.selected},
                  {"beta", s.beta},
                  {"degenerate", s.degenerate}};
    if (!s.degenerate) {
      split["train_r2"] = s.train_r2;
      split["test_r2"] = s.test_r2;
    } else {
      split["train_r2"] = s.train_r2;
    }
    splits.push_back(std::move(split));
  }
  json out = {{"config",
               {{"train_fraction", cfg.train_fraction},
                {"n_splits", cfg.n_splits},
                {"seed", cfg.rng_seed}}},
              {"splits", std::move(splits)},
              {"train_r2_mean", report.train_r2_mean},
              {"train_r2_stddev", report.train_r2_stddev},
              {"test_r2_mean", report.test_r2_mean},
              {"test_r2_stddev", report.test_r2_stddev},
              {"degenerate_count", report.degenerate_count}};
  return out.dump(2);
}

std::string cv_report_to_csv(const CvReport& report) {
  std::ostringstream os;
  os.precision(12);
  os << "split,phase,r2,n_predictors\n";
  for (const auto& s : report.splits) {
    os << s.split << ",train," << s.train_r2 << "," << s.selected.size() << "\n";
    if (!s.degenerate) {
      os << s.split << ",test," << s.test_r2 << "," << s.selected.size() << "\n";
    } else {
      os << s.split << ",test,," << s.selected.size() << "\n";
    }
  }
  return os.str();
}

}  // namespace hinreg
