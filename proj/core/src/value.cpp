#include "emoc/value.hpp"

#include "emoc/error.hpp"

namespace emoc {

Value Value::int_list(const std::vector<std::int64_t>& items) {
  std::vector<Value> out;
  out.reserve(items.size());
  for (auto v : items) out.push_back(integer(v));
  return list(std::move(out));
}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::Int) throw Error("value is not an integer: " + to_string());
  return scalar_;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) throw Error("value is not a boolean: " + to_string());
  return scalar_ != 0;
}

const std::vector<Value>& Value::items() const {
  if (kind_ != Kind::List) throw Error("value is not a list: " + to_string());
  return items_;
}

std::uint64_t Value::cell_count() const {
  if (kind_ != Kind::List) return 0;
  std::uint64_t n = 1 + items_.size();
  for (const auto& item : items_) {
    if (item.is_list()) n += item.cell_count();
  }
  return n;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Int:
      return std::to_string(scalar_);
    case Kind::Bool:
      return scalar_ ? "true" : "false";
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ", ";
        out += items_[i].to_string();
      }
      return out + "]";
    }
  }
  return {};
}

}  // namespace emoc
