#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d4m/assoc.hpp"

namespace d4m::bench {

enum class Operation { multiply, cat_key_mul, cat_val_mul, add };

inline constexpr std::array<Operation, 4> kAllOperations = {
    Operation::multiply, Operation::cat_key_mul, Operation::cat_val_mul, Operation::add};

/// "multiply", "catKeyMul", "catValMul" or "add".
std::string_view operation_name(Operation op);
/// Inverse of operation_name; throws std::invalid_argument for unknown names.
Operation parse_operation(std::string_view name);

enum class ValueMode { numeric, text };

/// Generator parameters. Keys are fixed-length strings over `alphabet`
/// drawn from a pool of max(2, 2^scale / 8) distinct keys; `key_length` 0
/// picks the shortest length that can name the whole pool.
struct GenSpec {
  int scale = 6;
  std::size_t key_length = 0;
  std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  ValueMode value_mode = ValueMode::numeric;
  std::uint64_t seed = 0;
};

/// 2^scale uniform i.i.d. triples; identical specs give identical output.
/// Numeric values are integers in [1, 100]; text values are three
/// characters from the alphabet. Throws std::invalid_argument for scale < 1,
/// scale > 30, an alphabet shorter than 2, or a key length too short for the
/// pool.
Triples generate_scaled_triples(const GenSpec& spec);

/// generate_scaled_triples merged with the default collision policy.
Assoc generate_scaled_assoc(const GenSpec& spec);

/// Accounted floating-point operations.
///   multiply, catKeyMul, catValMul: 2 * sum_k nnzCol_A(k) * nnzRow_B(k)
///   add: number of cells in the union pattern
std::uint64_t flop_count(Operation op, const Assoc& a, const Assoc& b);
std::uint64_t flop_count(std::string_view op, const Assoc& a, const Assoc& b);

/// Runs one operation once and returns its result.
Assoc execute(Operation op, const Assoc& a, const Assoc& b);

inline constexpr std::size_t kRuns = 5;

struct BenchRecord {
  Operation operation = Operation::multiply;
  int scale = 0;
  std::array<double, kRuns> run_seconds{};
  double median_seconds = 0.0;
  std::uint64_t flops = 0;
  double flops_rate = 0.0;
  /// Set on the first scale of a sweep: its first run includes cold-start cost.
  bool warmup = false;
  std::optional<std::string> error;
};

/// Middle order statistic of the five run times.
double median_of_runs(std::array<double, kRuns> runs);

/// Times kRuns executions of `op` on the same inputs.
BenchRecord measure(Operation op, const Assoc& a, const Assoc& b, int scale);

struct BenchOptions {
  std::vector<Operation> operations;
  std::vector<int> scales;  ///< ascending
  std::uint64_t seed = 1;
  ValueMode value_mode = ValueMode::numeric;
  /// Run independent (operation, scale) cells on separate threads. Each
  /// cell's timed runs stay single-threaded.
  bool parallel_cells = false;
};

/// Input seeds derived for one sweep cell.
GenSpec left_input_spec(const BenchOptions& opts, int scale);
GenSpec right_input_spec(const BenchOptions& opts, int scale);

/// One record per (operation, scale), operation-major. A failing cell keeps
/// its error in the record and the sweep continues. Throws
/// std::invalid_argument if the scales are not ascending.
std::vector<BenchRecord> run_benchmark(const BenchOptions& opts);

/// CSV: operation,scale,run1..run5,median_sec,flops,mflops. Errored records
/// are written with empty measurement fields.
void emit_results(std::span<const BenchRecord> records, std::ostream& out);

}  // namespace d4m::bench
