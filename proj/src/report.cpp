#include "exeval/report.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "exeval/error.hpp"

#include "json.hpp"

namespace fs = std::filesystem;

namespace exeval {

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw Error(Errc::Io, "cannot write " + file.string());
  return out;
}

std::string metric_or_undef(double v, bool defined) {
  return defined ? format_percent(v) : "undef";
}

void write_metrics_line(std::ostream& out, const std::string& indent, const std::string& name,
                        const Metrics& m) {
  out << indent << name << ": acc=" << metric_or_undef(m.acc, m.acc_defined)
      << " prec=" << metric_or_undef(m.prec, m.prec_defined)
      << " sens=" << metric_or_undef(m.sens, m.sens_defined)
      << " f1=" << metric_or_undef(m.f1, m.f1_defined)
      << " spec=" << metric_or_undef(m.spec, m.spec_defined) << " tp=" << m.tp << " fp=" << m.fp
      << " tn=" << m.tn << " fn=" << m.fn << "\n";
}

void write_summary_line(std::ostream& out, const std::string& indent, const std::string& name,
                        const MetricSummary& s) {
  out << indent << name << ": acc=" << format_percent(s.acc)
      << " f1=" << format_percent(s.f1) << " prec=" << format_percent(s.prec)
      << " sens=" << format_percent(s.sens) << " spec=" << format_percent(s.spec) << "\n";
}

void write_scheme_section(std::ostream& out, const std::string& name, const SchemeReport& report,
                          const LosoPlan& plan) {
  out << name << ":\n";
  const auto& agg = report.aggregate;
  out << "  aggregate:\n";
  write_summary_line(out, "    ", "headline_class_fold_macro", agg.headline);
  write_summary_line(out, "    ", "summed_confusion_macro", agg.micro);
  out << "    mean_fold_micro_accuracy: " << format_percent(agg.mean_fold_micro_accuracy)
      << "\n";
  out << "    summed_micro_accuracy: "
      << format_percent(agg.summed.total() > 0
                            ? 100.0 * static_cast<double>(agg.summed.trace()) /
                                  static_cast<double>(agg.summed.total())
                            : 0.0)
      << "\n";
  out << "    undefined_metric_exclusions: " << agg.undefined_exclusions << "\n";
  out << "  per_class_fold_mean:\n";
  for (std::size_t c = 0; c < report.classes.size(); ++c)
    write_summary_line(out, "    ", report.classes[c], agg.per_class_mean[c]);
  out << "  folds:\n";
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    char tag[32];
    std::snprintf(tag, sizeof(tag), "fold_%02zu", f);
    out << "    " << tag << ":\n";
    out << "      test_volunteer: " << plan.folds[f].test_volunteer << "\n";
    out << "      windows: " << report.folds[f].matrix.total() << "\n";
    out << "      micro_accuracy: " << format_percent(report.folds[f].micro_accuracy) << "\n";
    out << "      per_class:\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c)
      write_metrics_line(out, "        ", report.classes[c], report.folds[f].per_class[c]);
  }
}

}  // namespace

void write_confusion_csv(const fs::path& file, const ConfusionMatrix& m) {
  auto out = open_out(file);
  out << "actual\\predicted";
  for (const auto& c : m.classes) out << ',' << c;
  out << "\n";
  for (std::size_t a = 0; a < m.classes.size(); ++a) {
    out << m.classes[a];
    for (std::size_t p = 0; p < m.classes.size(); ++p) out << ',' << m.at(a, p);
    out << "\n";
  }
}

void write_confusion_mean_csv(const fs::path& file, const ConfusionMatrix& summed,
                              std::size_t n_folds) {
  auto out = open_out(file);
  out << "actual\\predicted";
  for (const auto& c : summed.classes) out << ',' << c;
  out << "\n";
  char buf[32];
  for (std::size_t a = 0; a < summed.classes.size(); ++a) {
    out << summed.classes[a];
    for (std::size_t p = 0; p < summed.classes.size(); ++p) {
      std::snprintf(buf, sizeof(buf), "%.6f",
                    static_cast<double>(summed.at(a, p)) / static_cast<double>(n_folds));
      out << ',' << buf;
    }
    out << "\n";
  }
}

std::vector<fs::path> write_loso_report(const fs::path& dir, const RunInfo& info,
                                        const LosoOutcome& outcome) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  const fs::path report_file = dir / "report.txt";
  {
    auto out = open_out(report_file);
    out << "run:\n";
    for (const auto& [k, v] : info) out << "  " << k << ": " << v << "\n";
    out << "plan:\n";
    out << "  folds: " << outcome.plan.folds.size() << "\n";
    for (std::size_t f = 0; f < outcome.plan.folds.size(); ++f) {
      const auto& fold = outcome.plan.folds[f];
      out << "  fold_" << (f < 10 ? "0" : "") << f << ": test=" << fold.test_volunteer
          << " validation=";
      for (std::size_t i = 0; i < fold.validation.size(); ++i)
        out << (i ? "|" : "") << fold.validation[i];
      out << " train_count=" << fold.train.size() << "\n";
    }
    out << "warnings:\n";
    out << "  dropped_short_series: " << outcome.dropped_short_series << "\n";
    std::size_t undersized_wu = 0, undersized_wl = 0;
    for (const auto& fr : outcome.fit_reports) {
      undersized_wu += fr.undersized_wu ? 1 : 0;
      undersized_wl += fr.undersized_wl ? 1 : 0;
    }
    out << "  undersized_wu_folds: " << undersized_wu << "\n";
    out << "  undersized_wl_folds: " << undersized_wl << "\n";
    std::size_t undef = outcome.primary.aggregate.undefined_exclusions;
    if (!outcome.end_to_end.folds.empty())
      undef += outcome.end_to_end.aggregate.undefined_exclusions;
    for (const auto& [ex, rep] : outcome.stage2) undef += rep.aggregate.undefined_exclusions;
    out << "  undefined_metric_exclusions: " << undef << "\n";

    const bool two_stage = !outcome.end_to_end.folds.empty();
    write_scheme_section(out, two_stage ? "stage1" : "primary", outcome.primary, outcome.plan);
    if (two_stage) {
      write_scheme_section(out, "end_to_end", outcome.end_to_end, outcome.plan);
      out << "stage2:\n";
      for (const auto& [ex, rep] : outcome.stage2) {
        out << "  " << to_string(ex) << ": acc=" << format_percent(rep.aggregate.headline.acc)
            << " f1=" << format_percent(rep.aggregate.headline.f1)
            << " windows=" << rep.aggregate.summed.total() << "\n";
      }
    }
  }
  written.push_back(report_file);

  const bool two_stage = !outcome.end_to_end.folds.empty();
  const std::string primary_tag = two_stage ? "stage1" : "primary";
  const fs::path total_csv = dir / ("confusion_" + primary_tag + "_total.csv");
  const fs::path mean_csv = dir / ("confusion_" + primary_tag + "_mean.csv");
  write_confusion_csv(total_csv, outcome.primary.aggregate.summed);
  write_confusion_mean_csv(mean_csv, outcome.primary.aggregate.summed,
                           outcome.primary.folds.size());
  written.push_back(total_csv);
  written.push_back(mean_csv);
  if (two_stage) {
    const fs::path e2e_total = dir / "confusion_end_to_end_total.csv";
    const fs::path e2e_mean = dir / "confusion_end_to_end_mean.csv";
    write_confusion_csv(e2e_total, outcome.end_to_end.aggregate.summed);
    write_confusion_mean_csv(e2e_mean, outcome.end_to_end.aggregate.summed,
                             outcome.end_to_end.folds.size());
    written.push_back(e2e_total);
    written.push_back(e2e_mean);
  }
  return written;
}

void write_manifest(const fs::path& file, const RunInfo& info,
                    const std::string& dataset_hash_hex) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json config;
  for (const auto& [k, v] : info) config[k] = v;
  j["config"] = config;
  j["dataset_hash"] = dataset_hash_hex;
  j["tool"] = {{"name", "exeval"}, {"version", "0.1.0"}, {"model_format", 1}};
  // Wall-clock data stays inside this block; everything above is a pure
  // function of (dataset bytes, run config).
  j["meta"] = {{"created_unix", static_cast<long long>(std::time(nullptr))}};
  auto out = open_out(file);
  out << j.dump(2) << "\n";
}

void write_comparison(const fs::path& dir, const RunInfo& info,
                      const std::vector<ComparisonRow>& rows) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "comparison.csv");
    out << "pipeline,algo,window,acc,f1,prec,sens,spec\n";
    for (const auto& row : rows)
      out << row.pipeline << ',' << row.algo << ',' << row.window << ','
          << format_percent(row.headline.acc) << ',' << format_percent(row.headline.f1) << ','
          << format_percent(row.headline.prec) << ',' << format_percent(row.headline.sens) << ','
          << format_percent(row.headline.spec) << "\n";
  }
  {
    auto out = open_out(dir / "comparison.txt");
    out << "run:\n";
    for (const auto& [k, v] : info) out << "  " << k << ": " << v << "\n";
    out << "rows:\n";
    for (const auto& row : rows) {
      out << "  " << row.pipeline << " " << row.algo << " w" << row.window
          << ": acc=" << format_percent(row.headline.acc)
          << " f1=" << format_percent(row.headline.f1)
          << " prec=" << format_percent(row.headline.prec)
          << " sens=" << format_percent(row.headline.sens)
          << " spec=" << format_percent(row.headline.spec) << "\n";
      if (!row.stage2.empty()) {
        out << "    stage2:";
        for (const auto& [ex, accf1] : row.stage2)
          out << " " << ex << "=(acc " << format_percent(accf1.first) << ", f1 "
              << format_percent(accf1.second) << ")";
        out << "\n";
      }
    }
  }
}

}  // namespace exeval
