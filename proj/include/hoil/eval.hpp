#pragma once

#include <cstdint>
#include <map>

#include "hoil/ast.hpp"

namespace hoil {

struct WarehouseStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t entries = 0;
};

/// Memoization store of eductive evaluation, keyed by (binding site,
/// canonical context). Sound by referential transparency: recomputation
/// would produce the cached value again. Lookups and inserts must appear
/// atomic to a future concurrent evaluator; insert-if-absent is idempotent
/// because the same key always maps to the same value.
class Warehouse {
 public:
  const Value* lookup(int binding_id, const std::string& context_key);
  void insert(int binding_id, const std::string& context_key, Value value);
  WarehouseStats stats() const;
  void clear();

 private:
  std::map<std::pair<int, std::string>, Value> entries_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

inline WarehouseStats warehouse_stats(const Warehouse& w) { return w.stats(); }

/// Demand-driven evaluation of a checked program. The context is the
/// program's %context literal overridden by c0; where-bound identifiers are
/// resolved through the warehouse when one is given. Errors carry source
/// positions.
Value eval(const Program& program, const Context& c0,
           const ProcedureRegistry& registry, Warehouse* warehouse = nullptr);

}  // namespace hoil
