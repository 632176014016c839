// sparsecert: certified lower bounds on the sparsity level recoverable by
// l1 minimization, plus exact small-scale oracles to check them.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsecert/sparsecert.hpp"

namespace {

using namespace sparsecert;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitBudget = 3;
constexpr int kExitRecoveryFailed = 4;
constexpr int kExitViolation = 5;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPARSECERT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DimensionError("SPARSECERT_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
  out << text;
}

std::string real_str(double v) { return detail::format_real(v); }

std::string support_str(const SupportSet& s) {
  std::string out = "{";
  bool first = true;
  for (Index i : s) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string support_json(const SupportSet& s) {
  std::string out = "[";
  bool first = true;
  for (Index i : s) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "]";
}

// ---------------------------------------------------------------- analyze --

std::string analyze_text(const Matrixd& A, const BoundsReport<double>& report,
                         double margin) {
  std::ostringstream out;
  out << "n (rows)                    " << report.n << "\n";
  out << "m (cols)                    " << report.m << "\n";
  out << "asf bound (l*)              " << report.asf_bound << "\n";
  out << "coherence                   " << real_str(report.coherence) << "\n";
  out << "coherence bound             " << report.coherence_bound << "\n";
  out << "coherence applies as given  "
      << (report.coherence_applies_as_given ? "yes" : "no (columns are not unit norm)")
      << "\n";
  out << "ric bound                   " << report.ric_bound
      << (report.ric_bound_valid ? " (valid)" : " (vacuous)") << "\n";
  out << "min diag ratio              " << real_str(report.min_diag_ratio) << "\n";
  out << "max nu                      " << real_str(report.max_nu) << "\n";
  out << "total score                 " << real_str(report.total_score) << "\n";

  const auto sv = scores(gram(A));
  const double threshold = 0.5 - margin;
  out << "sorted score prefix sums (threshold " << real_str(threshold) << "):\n";
  double sum = 0.0;
  bool crossed = false;
  constexpr Index kMaxRows = 64;
  for (Index k = 0; k < sv.size() && !crossed; ++k) {
    if (k == kMaxRows) {
      out << "  ... (" << sv.size() - k << " more)\n";
      break;
    }
    const double rho = sv.rho(sv.order[static_cast<std::size_t>(k)]);
    sum += rho;
    crossed = sum >= threshold;
    out << "  l=" << k + 1 << "  rho=" << real_str(rho) << "  sum=" << real_str(sum);
    if (crossed) out << "  <- reaches the threshold, so l* = " << k;
    out << "\n";
  }
  if (!crossed) {
    if (report.asf_bound == report.m)
      out << "  total stays below the threshold: every support is certified, l* = m\n";
    else
      out << "  (threshold reached at l = " << report.asf_bound + 1 << ")\n";
  }
  return out.str();
}

int run_analyze(const std::string& path, double margin, const std::string& format,
                const std::string& out_path) {
  const Matrixd A = load_matrix_file(path);
  const auto report = analyze(A, margin);
  if (format == "json")
    emit(to_json(report) + "\n", out_path);
  else
    emit(analyze_text(A, report, margin), out_path);
  return kExitOk;
}

// ----------------------------------------------------------------- oracle --

std::string oracle_json(const SparsityOracleReport<double>& report, Index s_max) {
  std::string out = "{\"exact_sparsity_level\":" + std::to_string(report.level);
  out += ",\"boundary\":" + std::string(report.boundary ? "true" : "false");
  out += ",\"s_max\":" + std::to_string(s_max);
  out += ",\"levels\":[";
  bool first = true;
  for (const auto& level : report.levels) {
    if (!first) out += ",";
    first = false;
    out += "{\"s\":" + std::to_string(level.s);
    out += ",\"worst_margin\":" + real_str(level.worst_margin);
    out += ",\"worst_support\":" + support_json(level.worst_support);
    out += ",\"passes\":" + std::string(level.passes ? "true" : "false");
    out += ",\"boundary\":" + std::string(level.boundary ? "true" : "false") + "}";
  }
  return out + "]}";
}

std::string oracle_text(const SparsityOracleReport<double>& report, Index s_max) {
  std::ostringstream out;
  out << "exact sparsity level  " << report.level;
  if (report.level == s_max) out << "  (at least; search capped at s_max)";
  if (report.boundary) out << "  [boundary: a margin sits within 1e-9 of 1/2]";
  out << "\n";
  for (const auto& level : report.levels) {
    out << "  s=" << level.s << "  worst margin " << real_str(level.worst_margin)
        << "  support " << support_str(level.worst_support) << "  "
        << (level.passes ? "pass" : "FAIL") << (level.boundary ? " (boundary)" : "")
        << "\n";
  }
  return out.str();
}

int run_oracle(const std::string& path, Index s_max, std::uint64_t budget,
               const std::string& format, const std::string& out_path) {
  const Matrixd A = load_matrix_file(path);
  const auto report = exact_sparsity_level(A, s_max, budget);
  if (format == "json")
    emit(oracle_json(report, s_max) + "\n", out_path);
  else
    emit(oracle_text(report, s_max), out_path);
  return kExitOk;
}

// ---------------------------------------------------------------- recover --

std::string recover_json(const RecoveryStats& stats, Index s) {
  std::string out = "{\"s\":" + std::to_string(s);
  out += ",\"trials\":" + std::to_string(stats.trials);
  out += ",\"successes\":" + std::to_string(stats.successes);
  out += ",\"max_error\":" + real_str(stats.max_error);
  out += ",\"seed\":" + std::to_string(stats.seed);
  out += ",\"lp_failures\":" + std::to_string(stats.lp_failures) + "}";
  return out;
}

int run_recover(const std::string& path, Index s, Index trials, std::uint64_t seed,
                const std::string& format, const std::string& out_path) {
  const Matrixd A = load_matrix_file(path);
  const RecoveryStats stats = recovery_trials(A, s, trials, seed);
  if (format == "json") {
    emit(recover_json(stats, s) + "\n", out_path);
  } else {
    std::ostringstream out;
    out << "s            " << s << "\n";
    out << "trials       " << stats.trials << "\n";
    out << "successes    " << stats.successes << "\n";
    out << "max error    " << real_str(stats.max_error) << "\n";
    out << "seed         " << stats.seed << "\n";
    if (stats.lp_failures > 0) out << "lp failures  " << stats.lp_failures << "\n";
    emit(out.str(), out_path);
  }
  return stats.successes == stats.trials ? kExitOk : kExitRecoveryFailed;
}

// -------------------------------------------------------------------- gen --

int run_gen(const std::string& kind, Index n, Index m, std::uint64_t seed,
            bool normalize, const std::string& out_path,
            const std::string& format) {
  GeneratorSpec spec;
  spec.rows = n;
  spec.cols = m;
  spec.seed = seed;
  spec.normalize_columns = normalize;
  if (kind == "gaussian")
    spec.kind = GeneratorKind::Gaussian;
  else if (kind == "identity-padded")
    spec.kind = GeneratorKind::IdentityPadded;
  else
    spec.kind = GeneratorKind::CustomKernel;

  const Matrixd A = generate(spec);
  std::optional<MatrixFormat> fmt;
  if (format == "csv") fmt = MatrixFormat::Csv;
  if (format == "matrix-market") fmt = MatrixFormat::MatrixMarketArray;
  save_matrix_file(out_path, A, fmt);
  return kExitOk;
}

// ----------------------------------------------------------------- verify --

int run_verify(const std::string& path, Index s_max, std::uint64_t budget,
               const std::string& format, const std::string& out_path) {
  const Matrixd A = load_matrix_file(path);
  const auto report = analyze(A);
  const auto oracle = exact_sparsity_level(A, s_max, budget);

  // The oracle caps the search at s_max, so only a bound inside the searched
  // range can be contradicted; a boundary-capped answer is inconclusive, not
  // a violation.
  const Index testable = std::min<Index>(report.asf_bound, s_max);
  const bool sound = oracle.level >= testable || oracle.boundary;

  std::vector<RatioCheck<double>> ratio_checks;
  std::vector<Index> ratio_s;
  for (Index s = 2; s <= std::min<Index>(s_max, A.cols()); ++s) {
    ratio_checks.push_back(restricted_ratio_check(A, s, budget));
    ratio_s.push_back(s);
  }
  const bool ratios_hold = std::all_of(ratio_checks.begin(), ratio_checks.end(),
                                       [](const auto& c) { return c.holds; });
  const bool pass = sound && ratios_hold;

  std::ostringstream out;
  if (format == "json") {
    out << "{\"asf_bound\":" << report.asf_bound
        << ",\"exact_sparsity_level\":" << oracle.level
        << ",\"boundary\":" << (oracle.boundary ? "true" : "false")
        << ",\"sound\":" << (sound ? "true" : "false") << ",\"ratio_checks\":[";
    for (std::size_t i = 0; i < ratio_checks.size(); ++i) {
      if (i) out << ",";
      out << "{\"s\":" << ratio_s[i] << ",\"lhs\":" << real_str(ratio_checks[i].lhs)
          << ",\"rhs\":" << real_str(ratio_checks[i].rhs)
          << ",\"holds\":" << (ratio_checks[i].holds ? "true" : "false") << "}";
    }
    out << "],\"pass\":" << (pass ? "true" : "false") << "}\n";
  } else {
    out << "asf bound (l*)        " << report.asf_bound << "\n";
    out << "exact sparsity level  " << oracle.level << "  (s_max " << s_max << ")"
        << (oracle.boundary ? "  [boundary]" : "") << "\n";
    out << "soundness l* <= exact level   " << (sound ? "OK" : "VIOLATION") << "\n";
    for (std::size_t i = 0; i < ratio_checks.size(); ++i) {
      out << "eigenvalue ratio bound s=" << ratio_s[i] << "    "
          << (ratio_checks[i].holds ? "OK" : "VIOLATION") << "  (lhs "
          << real_str(ratio_checks[i].lhs) << ", rhs " << real_str(ratio_checks[i].rhs)
          << ")\n";
    }
    out << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  emit(out.str(), out_path);
  return pass ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sparsecert: certified lower bounds on the sparsity level recoverable by "
      "l1 minimization, with exact brute-force oracles at small scale"};
  app.require_subcommand(1);

  std::string path, out_path, format = "text", kind = "gaussian";
  double margin = 0.0;
  Index s_max = 3, s = 1, trials = 50, n = 0, m = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  bool normalize = false;

  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };
  auto add_output = [&out_path](CLI::App* cmd) {
    cmd->add_option("-o,--output", out_path, "Write output to a file instead of stdout");
  };

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Score-function, coherence and ric bounds");
  analyze_cmd->add_option("matrix", path, "Matrix file (csv or matrix market)")
      ->required();
  analyze_cmd->add_option("--margin", margin,
                          "Tighten the 1/2 threshold to 1/2 - margin")
      ->check(CLI::NonNegativeNumber);
  add_format(analyze_cmd);
  add_output(analyze_cmd);

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exact sparsity level by exhaustive null-space check");
  oracle_cmd->add_option("matrix", path)->required();
  oracle_cmd->add_option("--smax", s_max, "Largest sparsity level to test")
      ->required()
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--budget", budget, "LP solve budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(oracle_cmd);
  add_output(oracle_cmd);

  CLI::App* recover_cmd =
      app.add_subcommand("recover", "Random planted-vector recovery trials");
  recover_cmd->add_option("matrix", path)->required();
  recover_cmd->add_option("-s,--sparsity", s, "Planted sparsity")
      ->required()
      ->check(CLI::NonNegativeNumber);
  recover_cmd->add_option("-t,--trials", trials, "Number of trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  recover_cmd->add_option("--seed", seed, "RNG seed (default: SPARSECERT_SEED or 0)");
  add_format(recover_cmd);
  add_output(recover_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a test matrix");
  gen_cmd->add_option("kind", kind, "Generator kind")
      ->required()
      ->check(CLI::IsMember({"gaussian", "identity-padded", "custom-kernel"}));
  gen_cmd->add_option("n", n, "Rows")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("m", m, "Cols")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", seed, "RNG seed (default: SPARSECERT_SEED or 0)");
  gen_cmd->add_flag("--normalize", normalize, "Rescale columns to unit norm");
  gen_cmd->add_option("-o,--output", out_path, "Output file (.csv or .mtx)")
      ->required();
  std::string gen_format = "auto";
  gen_cmd->add_option("--matrix-format", gen_format,
                      "File format (default: by extension, csv fallback)")
      ->check(CLI::IsMember({"auto", "csv", "matrix-market"}));

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Check the certified bound against the exact oracle");
  verify_cmd->add_option("matrix", path)->required();
  verify_cmd->add_option("--smax", s_max, "Largest sparsity level to test")
      ->required()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--budget", budget, "LP solve budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(verify_cmd);
  add_output(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/version or the usage error
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(analyze_cmd))
      return run_analyze(path, margin, format, out_path);
    if (app.got_subcommand(oracle_cmd))
      return run_oracle(path, s_max, budget, format, out_path);
    if (app.got_subcommand(recover_cmd))
      return run_recover(path, s, trials, seed, format, out_path);
    if (app.got_subcommand(gen_cmd))
      return run_gen(kind, n, m, seed, normalize, out_path, gen_format);
    if (app.got_subcommand(verify_cmd))
      return run_verify(path, s_max, budget, format, out_path);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ZeroColumnError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
