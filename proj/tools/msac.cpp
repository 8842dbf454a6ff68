// msac: encode a bit sequence against side-information, and the simulation
// and benchmark tools around it.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "msac/align.hpp"
#include "msac/analysis.hpp"
#include "msac/bitseq.hpp"
#include "msac/container.hpp"
#include "msac/describe.hpp"
#include "msac/error.hpp"
#include "msac/runs.hpp"
#include "msac/simulate.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;
constexpr int kExitInternal = 4;

// Raised for argument combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_table(const msac::ExtentTable& table, const char* name) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t l = 1; l < table.size(); ++l) {
    if (table[l].empty()) {
      continue;
    }
    os << (first ? "" : " ") << name << '_' << l << "=(";
    for (std::size_t i = 0; i < table[l].size(); ++i) {
      os << (i ? "," : "") << table[l][i];
    }
    os << ')';
    first = false;
  }
  return first ? std::string(name) + "=()" : os.str();
}

void print_description(const msac::Message& m, const msac::BitSeq& y) {
  if (m.mode == msac::Mode::PureDeletion) {
    std::cout << "deletions: " << format_table(msac::read_pure_description(m, y).counts, "V") << '\n';
    return;
  }
  const msac::GeneralDescription g = msac::read_general_description(m, y);
  std::cout << "extensions: " << format_table(g.ins.extend_counts, "E") << '\n';
  std::cout << "breaks: " << g.ins.break_flags << '\n';
  std::cout << "bursts:";
  if (g.ins.bursts.empty()) {
    std::cout << " none";
  }
  for (const msac::Burst& b : g.ins.bursts) {
    std::cout << " @" << b.slot << ':' << b.content.to_string();
  }
  std::cout << '\n';
  std::cout << "substitutions: " << g.sub.mask << '\n';
  std::cout << "deletions: " << format_table(g.del.counts, "V") << '\n';
}

const char* mode_name(msac::Mode mode) {
  return mode == msac::Mode::PureDeletion ? "pure" : "general";
}

struct Options {
  std::string x_path;
  std::string y_path;
  std::string message_path;
  std::string out_path;
  std::string prefix;
  std::string mode = "auto";
  std::string format = "table";
  std::string bench_kind;
  bool verbose = false;
  bool dump_hidden = false;
  msac::SourceParams params;
  std::vector<double> ps;
  std::vector<double> ds;
  std::size_t trials = 10;
  unsigned threads = 0;
};

int cmd_encode(const Options& o) {
  const msac::BitSeq x = msac::read_bit_file(o.x_path);
  const msac::BitSeq y = msac::read_bit_file(o.y_path);
  msac::Message m;
  if (o.mode == "pure") {
    m = msac::encode_pure(x, y);
  } else if (o.mode == "general") {
    m = msac::encode_general(x, y);
  } else {
    m = msac::encode_auto(x, y);
  }
  msac::write_file_bytes(o.out_path, m.serialize());
  std::cout << "mode: " << mode_name(m.mode) << '\n';
  std::cout << "x_length: " << x.size() << '\n';
  std::cout << "y_length: " << y.size() << '\n';
  std::cout << "payload_bits: " << m.payload_bits() << '\n';
  std::cout << "total_bits: " << m.total_bits() << '\n';
  std::cout << std::setprecision(6) << "rate: "
            << (y.empty() ? 0.0 : static_cast<double>(m.payload_bits()) / static_cast<double>(y.size()))
            << '\n';
  if (o.verbose) {
    print_description(m, y);
  }
  return 0;
}

int cmd_decode(const Options& o) {
  const msac::Message m = msac::Message::parse(msac::read_file_bytes(o.message_path));
  const msac::BitSeq y = msac::read_bit_file(o.y_path);
  msac::write_bit_file(o.out_path, msac::decode(m, y));
  return 0;
}

int cmd_simulate(const Options& o) {
  o.params.validate();
  const msac::SimInstance s = msac::generate(o.params);
  msac::write_bit_file(o.prefix + ".x.bits", s.x);
  msac::write_bit_file(o.prefix + ".y.bits", s.y);
  msac::write_file_bytes(o.prefix + ".params",
                         std::span(reinterpret_cast<const std::uint8_t*>(o.params.to_text().data()),
                                   o.params.to_text().size()));
  if (o.dump_hidden) {
    msac::write_bit_file(o.prefix + ".zx.bits", s.z_x);
    msac::write_bit_file(o.prefix + ".zy.bits", s.z_y);
    msac::write_bit_file(o.prefix + ".dx.bits", s.d_x.flags);
    msac::write_bit_file(o.prefix + ".dy.bits", s.d_y.flags);
  }
  std::cout << "x_length: " << s.x.size() << '\n' << "y_length: " << s.y.size() << '\n';
  return 0;
}

int cmd_bench(const Options& o) {
  if (o.trials == 0) {
    throw UsageError("--trials must be positive");
  }
  msac::RateReport report;
  if (o.bench_kind == "table1") {
    report = msac::run_table1(o.trials, o.params.n, o.params.seed, o.threads);
  } else {
    const std::vector<double> ps = o.ps.empty() ? std::vector<double>{0.5} : o.ps;
    const std::vector<double> ds = o.ds.empty() ? std::vector<double>{0.005, 0.01, 0.02} : o.ds;
    for (double p : ps) {
      msac::SourceParams{o.params.n, p, 0.0, 0.0, 0.0, o.params.seed}.validate();
    }
    for (double d : ds) {
      msac::SourceParams{o.params.n, 0.5, 0.0, d, 0.0, o.params.seed}.validate();
    }
    report = msac::run_rates(ps, ds, o.params.n, o.trials, o.params.seed, o.threads);
  }
  std::cout << (o.format == "csv" ? msac::to_csv(report) : msac::to_table(report));
  return 0;
}

// With files: describes the pair. Without: theory and oracles for --p/--dx/--n.
int cmd_analyze(const Options& o) {
  std::cout << std::setprecision(6);
  if (!o.x_path.empty()) {
    if (o.y_path.empty()) {
      throw UsageError("analyze needs both X and Y files");
    }
    const msac::BitSeq x = msac::read_bit_file(o.x_path);
    const msac::BitSeq y = msac::read_bit_file(o.y_path);
    const msac::RunDecomposition rd = msac::decompose_runs(y);
    std::cout << "x_length: " << x.size() << '\n';
    std::cout << "y_length: " << y.size() << '\n';
    std::cout << "y_runs: " << rd.size() << '\n';
    std::cout << "y_max_extent: " << rd.max_extent() << '\n';
    std::cout << "edit_distance: " << msac::nw_align(x, y).cost << '\n';
    std::cout << "no_si_bits: " << msac::baseline_no_si(x) << '\n';
    try {
      msac::greedy_align(x, y);
      std::cout << "subsequence: yes\n";
      std::cout << "dhat_direct_bits: " << msac::baseline_dhat_direct(x, y) << '\n';
      std::cout << "runs_single_context_bits: " << msac::baseline_w_runs(x, y) << '\n';
      std::cout << "pure_bits: " << msac::codec_pure_bits(x, y) << '\n';
    } catch (const msac::NotSubsequence&) {
      std::cout << "subsequence: no\n";
    }
    std::cout << "general_bits: " << msac::encode_general(x, y).payload_bits() << '\n';
    return 0;
  }
  const double d = o.params.d_x;
  std::cout << "c: " << msac::theoretical_c() << '\n';
  std::cout << "h2(d): " << msac::binary_entropy(d) << '\n';
  std::cout << "theoretical_rate: " << msac::theoretical_rate_pure(d) << '\n';
  if (o.params.n <= msac::kBruteforceMaxN) {
    std::cout << "bruteforce_rate: " << msac::bruteforce_conditional_entropy(o.params.n, o.params.p, d) << '\n';
  }
  msac::SourceParams params = o.params;
  params.q = 0.0;
  params.d_y = 0.0;
  params.validate();
  std::cout << "estimated_rate: " << msac::estimate_description_entropy(params, o.trials) << '\n';
  return 0;
}

void add_source_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.params.n, "length of Z_X")->check(CLI::PositiveNumber);
  app->add_option("--p", o.params.p, "P(Z_X bit = 1)");
  app->add_option("--q", o.params.q, "substitution probability");
  app->add_option("--dx", o.params.d_x, "deletion probability on the X side");
  app->add_option("--dy", o.params.d_y, "deletion probability on the Y side");
  app->add_option("--seed", o.params.seed, "base seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compression of a bit sequence against mis-aligned side-information"};
  app.require_subcommand(1);
  Options o;

  CLI::App* encode = app.add_subcommand("encode", "encode X given side-information Y");
  encode->add_option("x", o.x_path, "source bit file")->required()->check(CLI::ExistingFile);
  encode->add_option("y", o.y_path, "side-information bit file")->required()->check(CLI::ExistingFile);
  encode->add_option("-o,--out", o.out_path, "message file")->required();
  encode->add_option("--mode", o.mode, "pure, general or auto")
      ->check(CLI::IsMember({"pure", "general", "auto"}));
  encode->add_flag("-v,--verbose", o.verbose, "print the edit description");

  CLI::App* decode = app.add_subcommand("decode", "recover X from a message and Y");
  decode->add_option("message", o.message_path, "message file")->required()->check(CLI::ExistingFile);
  decode->add_option("y", o.y_path, "side-information bit file")->required()->check(CLI::ExistingFile);
  decode->add_option("-o,--out", o.out_path, "output bit file")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "draw one (X, Y) instance");
  add_source_flags(simulate, o);
  simulate->add_option("prefix", o.prefix, "writes PREFIX.x.bits, PREFIX.y.bits, PREFIX.params")->required();
  simulate->add_flag("--dump-hidden", o.dump_hidden, "also write Z_X, Z_Y and both deletion patterns");

  CLI::App* bench = app.add_subcommand("bench", "rate benchmarks in the pure-deletion regime");
  bench->add_option("kind", o.bench_kind, "table1 or sweep")
      ->required()
      ->check(CLI::IsMember({"table1", "sweep"}));
  o.params.n = 1000000;
  bench->add_option("--n", o.params.n, "length of Z_X")->check(CLI::PositiveNumber);
  bench->add_option("--seed", o.params.seed, "base seed; trial t uses seed + t");
  bench->add_option("--trials", o.trials, "instances per cell");
  bench->add_option("--p", o.ps, "sweep: bias values")->delimiter(',');
  bench->add_option("--d", o.ds, "sweep: deletion probabilities")->delimiter(',');
  bench->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  bench->add_option("--format", o.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

  CLI::App* analyze = app.add_subcommand("analyze", "describe an (X, Y) pair, or print rate theory");
  analyze->add_option("x", o.x_path, "source bit file")->check(CLI::ExistingFile);
  analyze->add_option("y", o.y_path, "side-information bit file")->check(CLI::ExistingFile);
  add_source_flags(analyze, o);
  analyze->add_option("--trials", o.trials, "Monte Carlo instances for the entropy estimate")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (encode->parsed()) {
      return cmd_encode(o);
    }
    if (decode->parsed()) {
      return cmd_decode(o);
    }
    if (simulate->parsed()) {
      return cmd_simulate(o);
    }
    if (bench->parsed()) {
      return cmd_bench(o);
    }
    return cmd_analyze(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const msac::NotSubsequence& e) {
    std::cerr << "error: " << e.what() << " (try --mode general)\n";
    return kExitUsage;
  } catch (const msac::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
