#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curveann/curveann.hpp"

using namespace curveann;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << bytes;
  if (!out) throw UsageError("failed writing '" + path + "'");
}

std::vector<RawCurve> read_curves(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return read_curve_file(in);
  } catch (const Error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

unsigned max_digits(const std::vector<RawCurve>& curves) {
  unsigned m = 0;
  for (const auto& c : curves) m = std::max(m, c.max_digits());
  return m;
}

std::vector<Curve> to_curves(const std::vector<RawCurve>& raw, unsigned scale) {
  std::vector<Curve> out;
  out.reserve(raw.size());
  for (const auto& r : raw) out.push_back(r.to_curve(scale));
  return out;
}

std::vector<std::string> ids_of(const std::vector<RawCurve>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) out.push_back(r.id);
  return out;
}

Variant variant_arg(const std::string& name) {
  auto v = parse_variant(name);
  if (!v) throw UsageError("unknown variant '" + name + "'");
  return *v;
}

IndexParams make_params(const Decimal& delta, const Ratio& eps, std::size_t k, Variant v,
                        unsigned scale) {
  IndexParams p{to_fixed(delta, scale), eps, k, v};
  p.validate();
  return p;
}

void check_eps(const Ratio& eps) {
  if (eps.num <= 0 || eps > Ratio(1, 1)) throw InvalidParams("eps must lie in (0, 1]");
}

std::int64_t grid_divisor(Variant v) { return v == Variant::two_plus_eps_small_space ? 4 : 2; }

std::size_t worker_count() {
  const char* env = std::getenv("CURVEANN_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  const long n = std::strtol(env, nullptr, 10);
  if (n < 1) throw UsageError("CURVEANN_WORKERS must be a positive integer");
  return static_cast<std::size_t>(n);
}

/// Runs fn(i) for i in [0, n) on the configured worker pool.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct QueryLine {
  std::string text;
  bool error = false;
  bool violation = false;
};

QueryLine answer(const AnnIndex& ix, const std::vector<std::string>& labels, const RawCurve& raw,
                 unsigned scale, bool verify) {
  QueryLine line;
  try {
    if (raw.max_digits() > scale) {
      throw InvalidQuery("query has more fractional digits than the index scale");
    }
    const Curve q = raw.to_curve(scale);
    const auto outcome = ix.query(q);
    line.text = raw.id + (outcome.match ? " MATCH " + labels[*outcome.match] : " NOMATCH");
    if (verify) {
      const Verdict v = check_outcome(ix.inputs(), ix.params(), normalize(q), outcome);
      line.violation = v != Verdict::ok;
      line.text += line.violation ? " VIOLATION " + std::string(verdict_name(v)) : " OK";
    }
  } catch (const Error& e) {
    line.error = true;
    line.text = raw.id + " ERROR " + e.what();
  }
  return line;
}

// ---- build ----------------------------------------------------------------

struct BuildArgs {
  std::string input, out, variant = "one_plus_eps", delta, eps;
  std::size_t k = 2;
  std::size_t max_keys = 0;
};

int cmd_build(const BuildArgs& a) {
  const Variant v = variant_arg(a.variant);
  const Ratio eps = parse_ratio(a.eps);
  check_eps(eps);
  const Decimal delta = parse_decimal(a.delta);
  const auto raw = read_curves(a.input);
  for (const auto& r : raw) {
    if (r.dim != 1) throw InvalidInput("curve '" + r.id + "' is not one-dimensional");
  }
  const unsigned scale = choose_scale(max_digits(raw), delta, eps, grid_divisor(v));
  const IndexParams params = make_params(delta, eps, a.k, v, scale);
  const auto t0 = std::chrono::steady_clock::now();
  const AnnIndex ix = AnnIndex::build(to_curves(raw, scale), params, BuildOptions{a.max_keys});
  const double build_ms = ms_since(t0);
  write_file(a.out, serialize(ix, scale, ids_of(raw)));
  std::size_t m_max = 0;
  for (const auto& c : ix.inputs()) m_max = std::max(m_max, c.size());
  std::cout << "variant=" << variant_name(v) << " n=" << ix.inputs().size() << " m_max=" << m_max
            << " keys=" << ix.key_count() << " skipped=" << ix.skipped().size()
            << " scale=" << scale << " build_ms=" << std::fixed << std::setprecision(3)
            << build_ms << '\n';
  return 0;
}

// ---- query ----------------------------------------------------------------

struct QueryArgs {
  std::string index, queries;
  bool verify = false;
};

int cmd_query(const QueryArgs& a) {
  const LoadedIndex loaded = deserialize(read_file(a.index));
  std::vector<std::string> labels = loaded.labels;
  if (labels.empty()) {
    for (std::size_t i = 0; i < loaded.index.inputs().size(); ++i) labels.push_back(std::to_string(i + 1));
  }
  const auto raw = read_curves(a.queries);
  std::vector<QueryLine> lines(raw.size());
  parallel_for(raw.size(), [&](std::size_t i) {
    lines[i] = answer(loaded.index, labels, raw[i], loaded.scale, a.verify);
  });
  bool error = false;
  bool violation = false;
  for (const auto& l : lines) {
    std::cout << l.text << '\n';
    error = error || l.error;
    violation = violation || l.violation;
  }
  if (violation) return kExitViolation;
  return error ? kExitUsage : 0;
}

// ---- scan -----------------------------------------------------------------

struct ScanArgs {
  std::string inputs, queries, delta;
};

int cmd_scan(const ScanArgs& a) {
  const Decimal delta = parse_decimal(a.delta);
  const auto raw_in = read_curves(a.inputs);
  const auto raw_q = read_curves(a.queries);
  const unsigned scale = std::max({max_digits(raw_in), max_digits(raw_q), delta.digits});
  if (scale > kMaxScale) throw InvalidInput("too many fractional digits");
  const auto inputs = to_curves(raw_in, scale);
  const Coord threshold = to_fixed(delta, scale);
  for (const auto& c : inputs) {
    if (!inputs.empty() && c.dim() != inputs.front().dim()) {
      throw InvalidInput("inputs mix 1D and 2D curves");
    }
  }
  std::vector<std::string> lines(raw_q.size());
  parallel_for(raw_q.size(), [&](std::size_t i) {
    const Curve q = raw_q[i].to_curve(scale);
    if (!inputs.empty() && q.dim() != inputs.front().dim()) {
      lines[i] = raw_q[i].id + " ERROR dimension mismatch";
      return;
    }
    const auto res = linear_scan(inputs, q, threshold);
    std::string line = raw_q[i].id + (res.nearest_within ? " WITHIN" : " NONE");
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      if (res.within[j]) line += " " + raw_in[j].id;
    }
    lines[i] = line;
  });
  bool error = false;
  for (const auto& l : lines) {
    std::cout << l << '\n';
    error = error || l.find(" ERROR ") != std::string::npos;
  }
  return error ? kExitUsage : 0;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string family, out_prefix;
  std::size_t n_a = 4, n_b = 4, d = 4;
  std::optional<std::size_t> sparsity;
  unsigned density = 50;
  std::uint64_t seed = 1;
  bool plant = false;
};

int cmd_gen(const GenArgs& a) {
  const auto family = parse_family(a.family);
  if (!family) throw UsageError("unknown family '" + a.family + "'");
  if (*family != GadgetFamily::one_d_3minus_eps && !a.sparsity) {
    throw UsageError(a.family + " needs --sparsity");
  }
  if (a.density > 100) throw UsageError("--density is a percentage");
  SamplerConfig cfg;
  cfg.n_a = a.n_a;
  cfg.n_b = a.n_b;
  cfg.d = a.d;
  cfg.sparsity = a.sparsity;
  cfg.density_percent = a.density;
  cfg.plant_orthogonal = a.plant;
  cfg.seed = a.seed;
  const SampledInstance s = sample_instance(cfg);
  const GadgetSet g = generate(s.instance, *family);

  std::ostringstream inputs, queries;
  for (std::size_t i = 0; i < g.inputs.size(); ++i) {
    write_curve(inputs, "b" + std::to_string(i + 1), g.inputs[i], 0);
  }
  for (std::size_t i = 0; i < g.queries.size(); ++i) {
    write_curve(queries, "a" + std::to_string(i + 1), g.queries[i], 0);
  }
  const std::string in_path = a.out_prefix + ".inputs.txt";
  const std::string q_path = a.out_prefix + ".queries.txt";
  write_file(in_path, inputs.str());
  write_file(q_path, queries.str());

  nlohmann::ordered_json m;
  m["family"] = family_name(*family);
  m["seed"] = a.seed;
  m["d"] = a.d;
  m["n_a"] = a.n_a;
  m["n_b"] = a.n_b;
  m["sparsity"] = a.sparsity ? nlohmann::ordered_json(*a.sparsity) : nlohmann::ordered_json(nullptr);
  m["density_percent"] = a.density;
  m["delta"] = 1;
  m["planted"] = a.plant;
  if (s.planted) {
    m["planted_pair"] = {{"query", "a" + std::to_string(s.planted->first + 1)},
                         {"input", "b" + std::to_string(s.planted->second + 1)}};
  } else {
    m["planted_pair"] = nullptr;
  }
  m["has_orthogonal_pair"] = has_orthogonal_pair(s.instance);
  m["inputs_file"] = in_path;
  m["queries_file"] = q_path;
  auto vectors = [](const std::vector<BitVector>& vs) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& v : vs) {
      std::string bitsv;
      for (auto x : v) bitsv += x ? '1' : '0';
      out.push_back(bitsv);
    }
    return out;
  };
  m["A"] = vectors(s.instance.a);
  m["B"] = vectors(s.instance.b);
  write_file(a.out_prefix + ".json", m.dump(2) + "\n");
  std::cout << "wrote " << in_path << ", " << q_path << ", " << a.out_prefix << ".json\n";
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string inputs, queries, delta, eps, variants = "all";
  std::size_t k = 2;
  std::size_t max_keys = 5'000'000;
  bool verify = false;
};

std::vector<Variant> variant_list(const std::string& list) {
  if (list == "all") return {std::begin(kAllVariants), std::end(kAllVariants)};
  std::vector<Variant> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(variant_arg(item));
  }
  if (out.empty()) throw UsageError("empty variant list");
  return out;
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1) + 0.5);
  return v[std::min(i, v.size() - 1)];
}

struct BenchRow {
  std::string variant;
  std::string status = "ok";
  double build_ms = 0;
  std::size_t keys = 0, skipped = 0, queries = 0, rejected = 0, matches = 0;
  std::size_t probes = 0, subsequences = 0, violations = 0;
  double p50 = 0, p90 = 0, max = 0;
};

int cmd_bench(const BenchArgs& a) {
  const auto variants = variant_list(a.variants);
  const Ratio eps = parse_ratio(a.eps);
  check_eps(eps);
  const Decimal delta = parse_decimal(a.delta);
  const auto raw_in = read_curves(a.inputs);
  const auto raw_q = read_curves(a.queries);
  const unsigned digits = std::max(max_digits(raw_in), max_digits(raw_q));
  const unsigned scale = choose_scale(digits, delta, eps, 4);
  const auto inputs = to_curves(raw_in, scale);
  const auto queries = to_curves(raw_q, scale);

  std::vector<BenchRow> rows;
  for (Variant v : variants) {
    BenchRow row;
    row.variant = std::string(variant_name(v));
    const IndexParams params = make_params(delta, eps, a.k, v, scale);
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<AnnIndex> ix;
    try {
      ix = AnnIndex::build(inputs, params, BuildOptions{a.max_keys});
    } catch (const BudgetExceeded&) {
      row.status = "budget_exceeded";
    }
    row.build_ms = ms_since(t0);
    if (ix) {
      row.keys = ix->key_count();
      row.skipped = ix->skipped().size();
      std::vector<double> lat;
      for (const auto& q : queries) {
        const Curve nq = q.dim() == 1 ? normalize(q) : q;
        if (nq.dim() != 1 || nq.size() < 2 || nq.size() > a.k) {
          ++row.rejected;
          continue;
        }
        const auto tq = std::chrono::steady_clock::now();
        const auto o = ix->query(nq);
        lat.push_back(ms_since(tq) * 1000.0);
        ++row.queries;
        row.matches += o.is_match();
        row.probes += o.stats.probes;
        row.subsequences += o.stats.subsequences;
        if (a.verify && check_outcome(ix->inputs(), params, nq, o) != Verdict::ok) ++row.violations;
      }
      row.p50 = percentile(lat, 0.5);
      row.p90 = percentile(lat, 0.9);
      row.max = lat.empty() ? 0 : *std::max_element(lat.begin(), lat.end());
    }
    std::cout << std::fixed << std::setprecision(3) << "variant=" << row.variant
              << " status=" << row.status << " build_ms=" << row.build_ms << " keys=" << row.keys
              << " skipped=" << row.skipped << " queries=" << row.queries
              << " rejected=" << row.rejected << " matches=" << row.matches
              << " probes=" << row.probes << " subsequences=" << row.subsequences
              << " latency_us_p50=" << row.p50 << " latency_us_p90=" << row.p90
              << " latency_us_max=" << row.max << " verified=" << (a.verify ? 1 : 0)
              << " violations=" << row.violations << '\n';
    rows.push_back(row);
  }
  std::cout << '\n'
            << std::left << std::setw(26) << "variant" << std::right << std::setw(12) << "build_ms"
            << std::setw(10) << "keys" << std::setw(9) << "queries" << std::setw(9) << "matches"
            << std::setw(11) << "p50_us" << std::setw(11) << "max_us" << std::setw(11)
            << "violations" << '\n';
  bool violation = false;
  bool incomplete = false;
  for (const auto& r : rows) {
    std::cout << std::left << std::setw(26) << r.variant << std::right << std::setw(12)
              << std::setprecision(2) << r.build_ms << std::setw(10) << r.keys << std::setw(9)
              << r.queries << std::setw(9) << r.matches << std::setw(11) << r.p50 << std::setw(11)
              << r.max << std::setw(11) << r.violations << '\n';
    violation = violation || r.violations > 0;
    incomplete = incomplete || r.status != "ok";
  }
  if (violation) return kExitViolation;
  return incomplete ? kExitUsage : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate near-neighbor search for time series under the Frechet distance"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build an index file from a curve file");
  b->add_option("--input", build.input, "Curve file")->required();
  b->add_option("--delta", build.delta, "Query radius")->required();
  b->add_option("--eps", build.eps, "Approximation error in (0, 1], e.g. 0.25 or 1/4")->required();
  b->add_option("--k", build.k, "Maximum query complexity (>= 2)")->required();
  b->add_option("--variant", build.variant, "Data structure variant");
  b->add_option("--out", build.out, "Index file to write")->required();
  b->add_option("--max-keys", build.max_keys, "Abort when the dictionary exceeds this size");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Answer queries against an index file");
  q->add_option("--index", query.index, "Index file")->required();
  q->add_option("--queries", query.queries, "Curve file with queries")->required();
  q->add_flag("--verify", query.verify, "Check every answer against an exact linear scan");

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "Exact linear scan (1D or 2D)");
  s->add_option("--inputs", scan.inputs, "Curve file")->required();
  s->add_option("--queries", scan.queries, "Curve file with queries")->required();
  s->add_option("--delta", scan.delta, "Distance threshold")->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate orthogonal-vectors gadget workloads");
  g->add_option("--family", gen.family, "one_d_2minus_eps, one_d_3minus_eps or two_d_3minus_eps")
      ->required();
  g->add_option("--nA", gen.n_a, "Number of query vectors");
  g->add_option("--nB", gen.n_b, "Number of input vectors");
  g->add_option("--d", gen.d, "Vector dimension");
  g->add_option("--sparsity", gen.sparsity, "Maximum number of ones in query vectors");
  g->add_option("--density", gen.density, "Percentage of ones in unconstrained vectors");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_flag("--plant", gen.plant, "Plant an orthogonal pair");
  g->add_option("--out-prefix", gen.out_prefix, "Output path prefix")->required();

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Build and replay several variants");
  be->add_option("--inputs", bench.inputs, "Curve file")->required();
  be->add_option("--queries", bench.queries, "Curve file with queries")->required();
  be->add_option("--delta", bench.delta, "Query radius")->required();
  be->add_option("--eps", bench.eps, "Approximation error in (0, 1]")->required();
  be->add_option("--k", bench.k, "Maximum query complexity")->required();
  be->add_option("--variants", bench.variants, "Comma separated variant names, or 'all'");
  be->add_option("--max-keys", bench.max_keys, "Per-variant dictionary size limit (0: none)");
  be->add_flag("--verify", bench.verify, "Check every answer against an exact linear scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*b) return cmd_build(build);
    if (*q) return cmd_query(query);
    if (*s) return cmd_scan(scan);
    if (*g) return cmd_gen(gen);
    if (*be) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
