#include "d4m/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <ostream>
#include <random>

#include "d4m/algebra.hpp"

namespace d4m::bench {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(std::ratio_less_equal_v<Clock::period, std::micro>,
              "benchmark clock must resolve at least one microsecond");

std::string encode_key(std::uint64_t id, std::size_t length, const std::string& alphabet) {
  std::string out(length, alphabet.front());
  for (std::size_t p = length; p-- > 0;) {
    out[p] = alphabet[id % alphabet.size()];
    id /= alphabet.size();
  }
  return out;
}

std::string format_double(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

}  // namespace

std::string_view operation_name(Operation op) {
  switch (op) {
    case Operation::multiply:
      return "multiply";
    case Operation::cat_key_mul:
      return "catKeyMul";
    case Operation::cat_val_mul:
      return "catValMul";
    case Operation::add:
      return "add";
  }
  return "unknown";
}

Operation parse_operation(std::string_view name) {
  for (Operation op : kAllOperations) {
    if (operation_name(op) == name) return op;
  }
  throw std::invalid_argument("d4m::bench: unknown operation '" + std::string(name) + "'");
}

Triples generate_scaled_triples(const GenSpec& spec) {
  if (spec.scale < 1 || spec.scale > 30) {
    throw std::invalid_argument("d4m::bench::GenSpec: scale must be in [1, 30]");
  }
  if (spec.alphabet.size() < 2) {
    throw std::invalid_argument("d4m::bench::GenSpec: alphabet needs at least two characters");
  }
  const std::uint64_t triples = std::uint64_t{1} << spec.scale;
  const std::uint64_t pool = std::max<std::uint64_t>(2, triples / 8);

  std::size_t shortest = 1;
  for (std::uint64_t reach = spec.alphabet.size(); reach < pool; reach *= spec.alphabet.size()) {
    ++shortest;
  }
  const std::size_t length = spec.key_length == 0 ? shortest : spec.key_length;
  if (length < shortest) {
    throw std::invalid_argument("d4m::bench::GenSpec: key length too short for the key pool");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint64_t> pick_key(0, pool - 1);
  std::uniform_int_distribution<int> pick_number(1, 100);
  std::uniform_int_distribution<std::uint64_t> pick_char(0, spec.alphabet.size() - 1);

  Triples t;
  t.rows.reserve(triples);
  t.cols.reserve(triples);
  t.vals.reserve(triples);
  for (std::uint64_t n = 0; n < triples; ++n) {
    t.rows.emplace_back(encode_key(pick_key(rng), length, spec.alphabet));
    t.cols.emplace_back(encode_key(pick_key(rng), length, spec.alphabet));
    if (spec.value_mode == ValueMode::numeric) {
      t.vals.emplace_back(pick_number(rng));
    } else {
      std::string v(3, ' ');
      for (char& c : v) c = spec.alphabet[pick_char(rng)];
      t.vals.emplace_back(std::move(v));
    }
  }
  return t;
}

Assoc generate_scaled_assoc(const GenSpec& spec) {
  return Assoc::from_triples(generate_scaled_triples(spec));
}

std::uint64_t flop_count(Operation op, const Assoc& a, const Assoc& b) {
  if (op == Operation::add) {
    const auto rows = sorted_union(a.rows(), b.rows());
    const auto cols = sorted_union(a.cols(), b.cols());
    std::vector<Coord> cells;
    cells.reserve(a.nnz() + b.nnz());
    for (const Coord& c : a.coords()) cells.push_back({rows.from_a[c.row], cols.from_a[c.col]});
    for (const Coord& c : b.coords()) cells.push_back({rows.from_b[c.row], cols.from_b[c.col]});
    std::sort(cells.begin(), cells.end());
    return static_cast<std::uint64_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
  }

  std::vector<std::uint64_t> a_col_nnz(a.cols().size(), 0);
  std::vector<std::uint64_t> b_row_nnz(b.rows().size(), 0);
  for (const Coord& c : a.coords()) ++a_col_nnz[c.col];
  for (const Coord& c : b.coords()) ++b_row_nnz[c.row];
  const auto inner = sorted_intersect(a.cols(), b.rows());
  std::uint64_t pairs = 0;
  for (std::size_t t = 0; t < inner.keys.size(); ++t) {
    pairs += a_col_nnz[inner.in_a[t]] * b_row_nnz[inner.in_b[t]];
  }
  return 2 * pairs;
}

std::uint64_t flop_count(std::string_view op, const Assoc& a, const Assoc& b) {
  return flop_count(parse_operation(op), a, b);
}

Assoc execute(Operation op, const Assoc& a, const Assoc& b) {
  switch (op) {
    case Operation::multiply:
      return multiply(a, b);
    case Operation::cat_key_mul:
      return cat_key_mul(a, b);
    case Operation::cat_val_mul:
      return cat_val_mul(a, b);
    case Operation::add:
      return add(a, b);
  }
  throw std::invalid_argument("d4m::bench: unknown operation");
}

double median_of_runs(std::array<double, kRuns> runs) {
  std::nth_element(runs.begin(), runs.begin() + kRuns / 2, runs.end());
  return runs[kRuns / 2];
}

BenchRecord measure(Operation op, const Assoc& a, const Assoc& b, int scale) {
  BenchRecord rec;
  rec.operation = op;
  rec.scale = scale;
  rec.flops = flop_count(op, a, b);
  for (double& seconds : rec.run_seconds) {
    const auto start = Clock::now();
    const Assoc result = execute(op, a, b);
    const auto stop = Clock::now();
    seconds = std::chrono::duration<double>(stop - start).count();
    volatile std::size_t sink = result.nnz();
    static_cast<void>(sink);
  }
  rec.median_seconds = median_of_runs(rec.run_seconds);
  // A zero median only happens below clock resolution; charge one tick.
  const double tick = std::chrono::duration<double>(Clock::duration(1)).count();
  rec.flops_rate = static_cast<double>(rec.flops) / std::max(rec.median_seconds, tick);
  return rec;
}

GenSpec left_input_spec(const BenchOptions& opts, int scale) {
  GenSpec g;
  g.scale = scale;
  g.value_mode = opts.value_mode;
  g.seed = opts.seed * 1000003u + static_cast<std::uint64_t>(scale) * 2;
  return g;
}

GenSpec right_input_spec(const BenchOptions& opts, int scale) {
  GenSpec g = left_input_spec(opts, scale);
  g.seed += 1;
  return g;
}

std::vector<BenchRecord> run_benchmark(const BenchOptions& opts) {
  if (!std::is_sorted(opts.scales.begin(), opts.scales.end())) {
    throw std::invalid_argument("d4m::bench: scales must be ascending");
  }

  auto run_cell = [&opts](Operation op, int scale) {
    BenchRecord rec;
    try {
      const Assoc a = generate_scaled_assoc(left_input_spec(opts, scale));
      const Assoc b = generate_scaled_assoc(right_input_spec(opts, scale));
      rec = measure(op, a, b, scale);
    } catch (const std::exception& e) {
      rec = BenchRecord{};
      rec.operation = op;
      rec.scale = scale;
      rec.error = e.what();
    }
    rec.warmup = scale == opts.scales.front();
    return rec;
  };

  std::vector<BenchRecord> records;
  if (!opts.parallel_cells) {
    for (Operation op : opts.operations) {
      for (int scale : opts.scales) records.push_back(run_cell(op, scale));
    }
    return records;
  }

  std::vector<std::future<BenchRecord>> pending;
  for (Operation op : opts.operations) {
    for (int scale : opts.scales) pending.push_back(std::async(std::launch::async, run_cell, op, scale));
  }
  for (auto& f : pending) records.push_back(f.get());
  return records;
}

void emit_results(std::span<const BenchRecord> records, std::ostream& out) {
  out << "operation,scale";
  for (std::size_t r = 1; r <= kRuns; ++r) out << ",run" << r;
  out << ",median_sec,flops,mflops\n";
  for (const BenchRecord& rec : records) {
    out << operation_name(rec.operation) << ',' << rec.scale;
    if (rec.error) {
      for (std::size_t r = 0; r < kRuns + 3; ++r) out << ',';
      out << '\n';
      continue;
    }
    for (double s : rec.run_seconds) out << ',' << format_double("%.9g", s);
    out << ',' << format_double("%.9g", rec.median_seconds) << ',' << rec.flops << ','
        << format_double("%.6g", rec.flops_rate / 1e6) << '\n';
  }
  if (!out) throw std::ios_base::failure("d4m::bench::emit_results: write failed");
}

}  // namespace d4m::bench
