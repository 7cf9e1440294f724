// sptlab: tables, named checks and binary quadratic form queries.
//
//   sptlab table spt --n-max 10
//   sptlab verify main --ell 13 --n-max 200 --output json
//   sptlab verify 'e*-mod128' w24-lift --depth-scale smoke
//   sptlab bqf compose 4,4,25 4,4,25

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fnmatch.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sptlab/sptlab.hpp"

namespace {

using namespace sptlab;

constexpr int kExitUsage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Output { json, tsv, human };

struct Config {
  unsigned threads = 1;
  std::string cache_dir;
  Output output = Output::human;
  DepthScale scale = DepthScale::full;
  bool timing = true;
};

BQF parse_form(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw usage_error("malformed form literal '" + text + "', expected a,b,c");
    }
  }
  if (v.size() != 3) throw usage_error("malformed form literal '" + text + "', expected a,b,c");
  return BQF{v[0], v[1], v[2]};
}

// ---- table ----------------------------------------------------------------

template <class Ring>
std::vector<typename Ring::value_type> compute_table(const std::string& kind, std::int64_t n_max, const Ring& ring) {
  if (kind == "p") return partition_table(n_max, ring).values;
  if (kind == "spt") return spt_table(n_max, ring).values;
  const auto m = mock_tables(n_max, ring);
  return kind == "d" ? m.d.values : m.a.values;
}

/// Cached values when a valid cache covers the request; stale or foreign files are ignored.
template <class Ring>
std::vector<typename Ring::value_type> cached_table(const Config& cfg, const std::string& kind, std::int64_t n_max,
                                                    const Ring& ring) {
  namespace fs = std::filesystem;
  const std::string name = kind + "-" + ring.descriptor().to_string();
  const fs::path path = fs::path(cfg.cache_dir) / (name + ".txt");
  const std::int64_t precision = through_q(n_max);
  if (!cfg.cache_dir.empty() && fs::exists(path)) {
    try {
      std::ifstream in(path);
      const auto c = read_series_cache(in);
      if (c.name != name) throw cache_format_error("name " + c.name + " does not match " + name);
      if (c.min_exp != 0) throw cache_format_error("unexpected min_exp");
      if (c.precision >= precision) {
        const auto s = c.bind(ring);
        std::vector<typename Ring::value_type> out;
        for (std::int64_t n = 0; n <= n_max; ++n) out.push_back(s.coeff_q(n));
        return out;
      }
    } catch (const std::exception& e) {
      std::cerr << "warning: ignoring cache " << path.string() << ": " << e.what() << '\n';
    }
  }
  auto values = compute_table(kind, n_max, ring);
  if (!cfg.cache_dir.empty()) {
    fs::create_directories(cfg.cache_dir);
    const auto series = QSeries<Ring>::generate(ring, 0, kUnit, precision, [&](std::int64_t e) {
      return values[static_cast<std::size_t>(e / kUnit)];
    });
    std::ofstream out(path);
    write_series_cache(out, name, series);
  }
  return values;
}

template <class Ring>
int print_table(const Config& cfg, const std::string& kind, std::int64_t n_max, const Ring& ring) {
  const auto values = cached_table(cfg, kind, n_max, ring);
  if (cfg.output == Output::json) {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["ring"] = ring.descriptor().to_string();
    auto& arr = j["values"] = nlohmann::ordered_json::array();
    for (std::int64_t n = 0; n <= n_max; ++n)
      arr.push_back(detail::integer_json(ring.to_integer(values[static_cast<std::size_t>(n)])));
    std::cout << j.dump(2) << '\n';
  } else {
    for (std::int64_t n = 0; n <= n_max; ++n)
      std::cout << n << '\t' << ring.to_string(values[static_cast<std::size_t>(n)]) << '\n';
  }
  return 0;
}

int cmd_table(const Config& cfg, const std::string& kind, std::int64_t n_max, std::uint64_t modulus) {
  if (kind != "p" && kind != "spt" && kind != "d" && kind != "a")
    throw usage_error("table kind must be p, spt, d or a, got '" + kind + "'");
  if (n_max < 0) throw usage_error("--n-max must be >= 0");
  if (modulus == 0) return print_table(cfg, kind, n_max, IntegerRing{});
  if (modulus < 2) throw usage_error("--modulus must be >= 2");
  return print_table(cfg, kind, n_max, ResidueRing(modulus));
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> selectors;
  std::vector<std::int64_t> ells;
  std::optional<std::int64_t> ell_max;
  std::optional<std::int64_t> n_max;
};

std::vector<CheckRequest> expand(const VerifyArgs& a) {
  std::vector<CheckRequest> out;
  const auto& per_ell = per_ell_families();
  for (const auto& sel : a.selectors) {
    const auto colon = sel.find(':');
    const std::string pattern = sel.substr(0, colon);
    std::optional<std::int64_t> arg;
    if (colon != std::string::npos) {
      try {
        arg = detail::parse_int(sel.substr(colon + 1), sel);
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
    }
    bool matched = false;
    for (const auto& family : check_families()) {
      if (fnmatch(pattern.c_str(), family.c_str(), 0) != 0) continue;
      matched = true;
      std::vector<std::int64_t> args;
      if (arg) args = {*arg};
      else if (family == "props" && a.ell_max) args = {*a.ell_max};
      else if (!a.ells.empty() && std::find(per_ell.begin(), per_ell.end(), family) != per_ell.end()) args = a.ells;
      else args = default_args(family);
      if (args.empty()) out.push_back({family, std::nullopt});
      for (const auto x : args) out.push_back({family, x});
    }
    if (!matched) throw usage_error("unknown check selector '" + sel + "'");
  }
  for (const auto& r : out) {
    if (std::find(per_ell.begin(), per_ell.end(), r.family) == per_ell.end()) continue;
    if (!r.arg || r.arg < 5 || !is_prime(*r.arg))
      throw usage_error(r.name() + ": the parameter must be a prime >= 5");
  }
  return out;
}

void print_reports(const Config& cfg, const std::vector<Report>& reports) {
  switch (cfg.output) {
    case Output::json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(to_json(r, cfg.timing));
      std::cout << arr.dump(2) << '\n';
      break;
    }
    case Output::tsv:
      std::cout << tsv_header() << '\n';
      for (const auto& r : reports) std::cout << to_tsv(r, cfg.timing) << '\n';
      break;
    case Output::human: {
      std::size_t pass = 0, fail = 0, skipped = 0;
      for (const auto& r : reports) {
        std::cout << to_human(r, cfg.timing) << '\n';
        (r.status == Status::pass ? pass : r.status == Status::fail ? fail : skipped) += 1;
      }
      std::cout << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
      break;
    }
  }
}

int cmd_verify(const Config& cfg, const VerifyArgs& a) {
  const auto requests = expand(a);
  CheckOptions opt;
  opt.scale = cfg.scale;
  opt.n_max = a.n_max;
  std::vector<Report> reports;
  try {
    reports = run_suite(requests, opt, cfg.threads);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  print_reports(cfg, reports);
  return suite_exit_status(reports);
}

// ---- bqf ------------------------------------------------------------------

void print_forms(const Config& cfg, const std::vector<BQF>& forms) {
  if (cfg.output == Output::json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : forms) arr.push_back({f.a, f.b, f.c});
    std::cout << arr.dump() << '\n';
  } else {
    for (const auto& f : forms) std::cout << f.to_string() << '\n';
  }
}

int cmd_bqf(const Config& cfg, const std::string& sub, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw usage_error("bqf " + sub + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  };
  auto integer = [](const std::string& s) {
    try {
      return detail::parse_int(s, "bqf argument");
    } catch (const std::invalid_argument& e) {
      throw usage_error(e.what());
    }
  };
  try {
    if (sub == "reduce") {
      need(1);
      print_forms(cfg, {reduce(parse_form(args[0]))});
    } else if (sub == "classes") {
      need(1);
      print_forms(cfg, enumerate_reduced(integer(args[0])));
    } else if (sub == "compose") {
      need(2);
      print_forms(cfg, {compose(parse_form(args[0]), parse_form(args[1]))});
    } else if (sub == "represent") {
      need(2);
      const auto reps = representations(parse_form(args[0]), integer(args[1]));
      if (cfg.output == Output::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [x, y] : reps) arr.push_back({x, y});
        std::cout << arr.dump() << '\n';
      } else {
        for (const auto& [x, y] : reps) std::cout << x << '\t' << y << '\n';
      }
    } else if (sub == "residues") {
      need(2);
      const auto res = residue_set(parse_form(args[0]), integer(args[1]));
      if (cfg.output == Output::json) {
        std::cout << nlohmann::json(std::vector<std::int64_t>(res.begin(), res.end())).dump() << '\n';
      } else {
        bool first = true;
        for (const auto r : res) std::cout << (first ? "" : " ") << r, first = false;
        std::cout << '\n';
      }
    } else {
      throw usage_error("unknown bqf subcommand '" + sub + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  return 0;
}

unsigned default_threads() {
  if (const char* env = std::getenv("SPTLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw usage_error(std::string("SPTLAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spt congruence laboratory: tables, identity checks, quadratic forms"};
  app.require_subcommand(1);

  Config cfg;
  std::string output = "human", scale = "full";
  std::optional<unsigned> threads;
  app.add_option("--output", output, "json | tsv | human")->check(CLI::IsMember({"json", "tsv", "human"}));
  app.add_option("--threads", threads, "worker threads (default: SPTLAB_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "directory for table caches");
  app.add_option("--depth-scale", scale, "smoke | full")->check(CLI::IsMember({"smoke", "full"}));
  app.add_flag("--no-timing", [&](std::int64_t) { cfg.timing = false; }, "report zero seconds");

  std::string kind;
  std::int64_t table_n_max = 100;
  std::uint64_t modulus = 0;
  auto* table = app.add_subcommand("table", "print p / spt / d / a values");
  table->add_option("kind", kind, "p | spt | d | a")->required();
  table->add_option("--n-max", table_n_max, "last index");
  table->add_option("--modulus", modulus, "reduce modulo this (default: exact)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run named checks");
  verify->add_option("checks", va.selectors, "check names, name:param, or globs")->required();
  verify->add_option("--ell", va.ells, "primes for the per-prime checks");
  verify->add_option("--ell-max", va.ell_max, "largest prime for props");
  verify->add_option("--n-max", va.n_max, "last n for congruence checks");

  std::string bqf_sub;
  std::vector<std::string> bqf_args;
  auto* bqf = app.add_subcommand("bqf", "binary quadratic forms: reduce, classes, represent, compose, residues");
  bqf->add_option("op", bqf_sub, "reduce | classes | represent | compose | residues")->required();
  bqf->add_option("args", bqf_args, "forms as a,b,c or integers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.output = output == "json" ? Output::json : output == "tsv" ? Output::tsv : Output::human;
    cfg.scale = scale == "smoke" ? DepthScale::smoke : DepthScale::full;
    cfg.threads = threads ? *threads : default_threads();
    if (*table) return cmd_table(cfg, kind, table_n_max, modulus);
    if (*verify) return cmd_verify(cfg, va);
    return cmd_bqf(cfg, bqf_sub, bqf_args);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
