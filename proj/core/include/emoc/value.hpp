#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emoc {

/// A host-side subject-language value: 64-bit integer, boolean, or list.
/// Immutable value semantics; the VM uses its own reference-counted heap and
/// converts at the boundary.
class Value {
 public:
  enum class Kind : std::uint8_t { Int, Bool, List };

  Value() = default;

  static Value integer(std::int64_t v) { return Value(Kind::Int, v, {}); }
  static Value boolean(bool b) { return Value(Kind::Bool, b ? 1 : 0, {}); }
  static Value list(std::vector<Value> items) { return Value(Kind::List, 0, std::move(items)); }
  static Value int_list(const std::vector<std::int64_t>& items);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_list() const { return kind_ == Kind::List; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const std::vector<Value>& items() const;

  /// Heap cells this value occupies when materialized as an argument: 0 for a
  /// scalar (it lives in its parameter slot), 1 + length plus nested lists for
  /// a list.
  std::uint64_t cell_count() const;

  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Value(Kind kind, std::int64_t scalar, std::vector<Value> items)
      : kind_(kind), scalar_(scalar), items_(std::move(items)) {}

  Kind kind_ = Kind::Int;
  std::int64_t scalar_ = 0;
  std::vector<Value> items_;
};

}  // namespace emoc
