#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlelcs/anchors.hpp"
#include "rlelcs/bench.hpp"
#include "rlelcs/config.hpp"
#include "rlelcs/errors.hpp"
#include "rlelcs/reductions.hpp"
#include "rlelcs/reference.hpp"
#include "rlelcs/walk.hpp"

using namespace rlelcs;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitResource = 2;
constexpr int kExitInternal = 3;

std::string read_all(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_all(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path, 0);
  out << data;
}

RleString load_string(const std::string& path, bool raw) {
  const std::string data = read_all(path);
  if (raw) return encode(data);
  std::istringstream in(data);
  const auto lines = read_rle_lines(in);
  return lines.empty() ? RleString() : lines.front();
}

struct CommonFlags {
  std::string mode;
  std::string anchors;
  std::uint64_t seed = 1;
  std::string config;
  std::int64_t d_min = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mode", f.mode, "fullset, walk or costonly")->check(CLI::IsMember({"fullset", "walk", "costonly"}));
  cmd->add_option("--anchors", f.anchors, "exhaustive or minimizer")->check(CLI::IsMember({"exhaustive", "minimizer"}));
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--config", f.config, "key=value configuration file");
  cmd->add_option("--d-min", f.d_min, "smallest d using the configured anchor scheme");
}

SolverConfig make_config(CLI::App* cmd, const CommonFlags& f) {
  SolverConfig config;
  if (!f.config.empty()) config.apply(load_key_values(f.config));
  if (cmd->count("--mode")) config.mode = parse_walk_mode(f.mode);
  if (cmd->count("--anchors")) config.scheme = parse_anchor_scheme(f.anchors);
  if (cmd->count("--seed")) config.seed = f.seed;
  if (cmd->count("--d-min")) config.d_min = f.d_min;
  return config;
}

// ---------------------------------------------------------------------------

int cmd_encode(const std::string& input, const std::string& output) {
  write_all(output, format_rle(encode(read_all(input))) + "\n");
  return 0;
}

int cmd_decode(const std::string& input, const std::string& output) {
  std::istringstream in(read_all(input));
  const auto lines = read_rle_lines(in);
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += decode(lines[i]);
  }
  write_all(output, out);
  return 0;
}

int cmd_solve(const std::string& a_file, const std::string& b_file, bool raw, const std::string& json_out,
              const SolverConfig& config) {
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(load_string(a_file, raw), ledger);
  const OracleHandle b(load_string(b_file, raw), ledger);
  const auto ans = solve_lcs_rle_p(a, b, config);
  const std::string json = answer_to_json(ans, *ledger);
  std::cout << json << "\n";
  if (!json_out.empty()) write_all(json_out, json + "\n");
  return 0;
}

int cmd_lrs(const std::string& a_file, bool raw, const SolverConfig& config) {
  auto ledger = std::make_shared<QueryLedger>();
  const OracleHandle a(load_string(a_file, raw), ledger);
  const auto ans = solve_lrs(a, config);
  std::cout << answer_to_json(ans, *ledger) << "\n";
  return 0;
}

int cmd_bench(const std::vector<std::int64_t>& ns, const std::vector<std::int64_t>& ds, std::int64_t trials,
              const std::string& csv_out, const SolverConfig& config) {
  std::vector<BenchRow> rows;
  for (std::int64_t n : ns) {
    for (std::int64_t d : ds) {
      if (d > n) throw ParameterError("grid cell with d > n");
      rows.push_back(bench_cell(n, d, trials, config.seed, config));
    }
  }
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  write_all(csv_out, csv.str());
  return 0;
}

struct ReductionLine {
  std::string bits;
  std::int64_t decoded = 0;
  std::int64_t k_prime = 0;
  int expect = 0;
  int dl = 0;
  int el = 0;
  std::int64_t el_calls = 0;
};

int cmd_reductions(const std::string& bits, int exhaustive_upto, const std::string& solver_name,
                   const SolverConfig& config) {
  DlSolver dl;
  ElSolver el;
  if (solver_name == "walk") {
    auto run = [config](const RleString& s, const RleString& t) {
      auto ledger = std::make_shared<QueryLedger>();
      const OracleHandle a(s, ledger);
      const OracleHandle b(t, ledger);
      return solve_lcs_rle_p(a, b, config);
    };
    dl = [run](const RleString& s, const RleString& t) {
      auto ans = run(s, t);
      return ans ? ans->d_tilde : std::int64_t{0};
    };
    el = [run](const RleString& s, const RleString& t) {
      auto ans = run(s, t);
      return ans ? ans->ell : std::int64_t{0};
    };
  } else {
    dl = [](const RleString& s, const RleString& t) { return brute_lcs(s, t).length; };
    el = [](const RleString& s, const RleString& t) { return brute_lcs(s, t).encoded_length; };
  }

  std::vector<ParityInstance> cases;
  if (!bits.empty()) cases.push_back(ParityInstance::from_string(bits));
  for (int len = 1; len <= exhaustive_upto; ++len) {
    for (std::uint32_t v = 0; v < (1u << len); ++v) {
      ParityInstance p;
      for (int i = len - 1; i >= 0; --i) p.bits.push_back(static_cast<int>((v >> i) & 1));
      cases.push_back(p);
    }
  }

  const bool table = cases.size() <= 64;
  if (table) std::cout << "bits\tgadget\tdecoded\tk_prime\tparity\tdl\tel\tel_calls\n";
  std::int64_t mismatches = 0;
  std::int64_t max_calls = 0;
  for (const ParityInstance& p : cases) {
    const ParityRun via_dl = parity_via_dl(p, dl);
    const ParityRun via_el = parity_via_el(p, el);
    const int expect = p.parity();
    if (via_dl.parity != expect || via_el.parity != expect) ++mismatches;
    max_calls = std::max(max_calls, via_el.calls);
    if (table) {
      const RleString g = gadget_dl(p);
      std::cout << p.to_string() << '\t' << format_rle(g) << '\t' << g.decoded_length() << '\t' << via_el.k_prime
                << '\t' << expect << '\t' << via_dl.parity << '\t' << via_el.parity << '\t' << via_el.calls << '\n';
    }
  }
  std::cout << "cases=" << cases.size() << " mismatches=" << mismatches << " max_el_calls=" << max_calls << "\n";
  return mismatches == 0 ? 0 : 4;
}

int cmd_validate(const std::string& a_file, const std::string& b_file, bool raw, std::int64_t planted,
                 std::int64_t n_runs, std::int64_t d_runs, std::int64_t d, const SolverConfig& config) {
  std::vector<std::pair<RleString, RleString>> instances;
  if (planted > 0) {
    for (std::int64_t t = 0; t < planted; ++t) {
      const auto inst = plant_pair(n_runs, d_runs, d_runs, config.seed + static_cast<std::uint64_t>(t));
      instances.emplace_back(inst.a, inst.b);
    }
  } else {
    if (a_file.empty() || b_file.empty()) throw ParameterError("give --a and --b, or --planted");
    instances.emplace_back(load_string(a_file, raw), load_string(b_file, raw));
  }

  std::int64_t valid = 0;
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const auto& [a, b] = instances[t];
    const Concatenation s = concat_sep(a, b);
    AnchorSet x;
    std::string note;
    if (config.scheme == AnchorScheme::kMinimizer && d >= config.d_min) {
      x = build_minimizer(s.joined, d, config.seed, config.d_min);
    } else {
      if (config.scheme == AnchorScheme::kMinimizer) note = " fallback=exhaustive(d<d_min)";
      x = build_exhaustive(s.joined, d);
    }
    const AnchorValidation v = validate_anchor_set(x, s.joined, s.separator_run, d);
    if (v.valid) ++valid;
    std::cout << "instance=" << t << " scheme=" << to_string(x.scheme) << " m=" << x.size() << " d=" << d
              << " blocks=" << v.blocks_checked << " verdict=" << (v.valid ? "valid" : "invalid") << note;
    if (v.witness) std::cout << " witness=(" << v.witness->start_a << "," << v.witness->start_b << ")";
    std::cout << "\n";
  }
  std::cout << "valid=" << valid << "/" << instances.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longest common substring of run-length encoded strings"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output;
  auto* enc = app.add_subcommand("encode", "raw bytes to RLE text");
  enc->add_option("input", input, "raw input file (default stdin)");
  enc->add_option("-o,--output", output, "output file (default stdout)");

  auto* dec = app.add_subcommand("decode", "RLE text to raw bytes");
  dec->add_option("input", input, "RLE text file (default stdin)");
  dec->add_option("-o,--output", output, "output file (default stdout)");

  std::string a_file;
  std::string b_file;
  bool raw = false;
  std::string json_out;
  CommonFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "longest common substring of two strings");
  solve->add_option("a", a_file, "first string")->required();
  solve->add_option("b", b_file, "second string")->required();
  solve->add_flag("--raw", raw, "inputs are raw byte files");
  solve->add_option("--json", json_out, "also write the result JSON to this file");
  add_common(solve, solve_flags);

  CommonFlags lrs_flags;
  auto* lrs = app.add_subcommand("lrs", "longest repeated substring of one string");
  lrs->add_option("a", a_file, "input string")->required();
  lrs->add_flag("--raw", raw, "input is a raw byte file");
  add_common(lrs, lrs_flags);

  std::vector<std::int64_t> ns;
  std::vector<std::int64_t> ds;
  std::int64_t trials = 1;
  std::string csv_out;
  CommonFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "ledger scaling grid on planted instances");
  bench->add_option("--n", ns, "encoded lengths")->required();
  bench->add_option("--d", ds, "planted encoded lengths")->required();
  bench->add_option("--trials", trials, "trials per cell")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_out, "CSV output file (default stdout)");
  add_common(bench, bench_flags);

  std::string bits;
  int exhaustive_upto = 0;
  std::string solver_name = "brute";
  CommonFlags red_flags;
  auto* red = app.add_subcommand("reductions", "parity through the LCS reductions");
  red->add_option("--bits", bits, "a bit string such as 101");
  red->add_option("--exhaustive-upto", exhaustive_upto, "all bit strings up to this length")->check(CLI::Range(0, 20));
  red->add_option("--solver", solver_name, "brute or walk")->check(CLI::IsMember({"brute", "walk"}));
  add_common(red, red_flags);

  std::int64_t planted = 0;
  std::int64_t n_runs = 64;
  std::int64_t d_runs = 16;
  std::int64_t d = 8;
  CommonFlags val_flags;
  auto* val = app.add_subcommand("validate-anchors", "check the anchoring property");
  val->add_option("--a", a_file, "first string");
  val->add_option("--b", b_file, "second string");
  val->add_flag("--raw", raw, "inputs are raw byte files");
  val->add_option("--planted", planted, "number of planted instances instead of files");
  val->add_option("--n", n_runs, "runs per planted string");
  val->add_option("--d-runs", d_runs, "runs of the planted block");
  val->add_option("--d", d, "anchor length d")->check(CLI::PositiveNumber);
  add_common(val, val_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) return cmd_encode(input, output);
    if (*dec) return cmd_decode(input, output);
    if (*solve) return cmd_solve(a_file, b_file, raw, json_out, make_config(solve, solve_flags));
    if (*lrs) return cmd_lrs(a_file, raw, make_config(lrs, lrs_flags));
    if (*bench) {
      SolverConfig config = make_config(bench, bench_flags);
      if (!bench->count("--mode")) config.mode = WalkMode::kCostOnly;
      return cmd_bench(ns, ds, trials, csv_out, config);
    }
    if (*red) {
      if (bits.empty() && exhaustive_upto == 0) throw ParameterError("give --bits or --exhaustive-upto");
      return cmd_reductions(bits, exhaustive_upto, solver_name, make_config(red, red_flags));
    }
    if (*val) return cmd_validate(a_file, b_file, raw, planted, n_runs, d_runs, d, make_config(val, val_flags));
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParameterError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
