#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace glc {

// Opaque string token with a phantom tag so vertex and edge ids do not mix.
template <class Tag>
class Id {
 public:
  Id() = default;
  Id(std::string v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Id(const char* v) : value_(v) {}             // NOLINT(google-explicit-constructor)

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value_; }

 private:
  std::string value_;
};

struct VertexTag {};
struct EdgeTag {};

using VertexId = Id<VertexTag>;
using EdgeId = Id<EdgeTag>;
using VertexSet = std::set<VertexId>;
using EdgeSet = std::set<EdgeId>;

}  // namespace glc

template <class Tag>
struct std::hash<glc::Id<Tag>> {
  std::size_t operator()(const glc::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
