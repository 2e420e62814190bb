#include "heh/runtime/value.hpp"

#include <boost/container_hash/hash.hpp>

namespace heh {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorKind::OffsetOutOfBounds: return "OffsetOutOfBounds";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::HeterogeneousNesting: return "HeterogeneousNesting";
    case ErrorKind::UndefinedOrdinalOp: return "UndefinedOrdinalOp";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ReduceOnInfinite: return "ReduceOnInfinite";
    case ErrorKind::FilterRankError: return "FilterRankError";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::IrreducibleTerm: return "IrreducibleTerm";
    case ErrorKind::RecursionDepthExceeded: return "RecursionDepthExceeded";
  }
  return "?";
}

std::string EvalError::render() const {
  std::string out = "error[" + std::string(kind_name(kind_)) + "]";
  if (!rule_.empty()) out += " in " + rule_;
  if (located_) out += " at " + span().str();
  return out + ": " + what();
}

}  // namespace heh

namespace heh::runtime {

Env Env::bind(std::string name, Handle h) const {
  Env e;
  e.head_ = std::make_shared<const Node>(Node{std::move(name), h, head_});
  return e;
}

std::optional<Handle> Env::lookup(std::string_view name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return n->handle;
  return std::nullopt;
}

Handle Store::insert(Value v) {
  cells_.push_back(std::move(v));
  return Handle{cells_.size() - 1};
}

Handle Store::resolve(Handle h) const {
  while (const auto* a = std::get_if<Alias>(&cells_[h.id])) h = a->target;
  return h;
}

namespace {

[[noreturn]] void out_of_bounds(const Index& shape, const Index& index) {
  throw EvalError(ErrorKind::IndexOutOfBounds, "Sel-strict",
                  "index " + format_index(index) + " outside shape " + format_index(shape));
}

}  // namespace

std::size_t IndexHash::operator()(const Index& index) const noexcept {
  std::size_t seed = index.size();
  for (const Ordinal& o : index) {
    boost::hash_combine(seed, o.terms().size());
    for (const Term& t : o.terms()) {
      boost::hash_combine(seed, std::hash<Natural>{}(t.exponent));
      boost::hash_combine(seed, std::hash<Natural>{}(t.coefficient));
    }
  }
  return seed;
}

std::size_t linearize(const Index& shape, const Index& index) {
  if (shape.size() != index.size())
    throw EvalError(ErrorKind::RankMismatch, "Sel-strict",
                    "index " + format_index(index) + " has rank " +
                        std::to_string(index.size()) + ", expected " +
                        std::to_string(shape.size()));
  std::size_t offset = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (!(index[k] < shape[k])) out_of_bounds(shape, index);
    offset = offset * shape[k].to_u64() + index[k].to_u64();
  }
  return offset;
}

Index delinearize(const Index& shape, std::size_t offset) {
  auto count = element_count(shape);
  if (!count || offset >= *count)
    throw EvalError(ErrorKind::OffsetOutOfBounds, "F",
                    "offset " + std::to_string(offset) + " outside shape " + format_index(shape));
  Index out(shape.size());
  for (std::size_t k = shape.size(); k-- > 0;) {
    const std::size_t extent = shape[k].to_u64();
    out[k] = Ordinal(static_cast<std::uint64_t>(offset % extent));
    offset /= extent;
  }
  return out;
}

bool all_finite(const Index& shape) {
  for (const Ordinal& o : shape)
    if (!o.is_natural()) return false;
  return true;
}

std::optional<std::size_t> element_count(const Index& shape, std::size_t limit) {
  std::size_t n = 1;
  for (const Ordinal& o : shape) {
    if (!o.is_natural()) return std::nullopt;
    const Natural v = *o.as_natural();
    if (v == 0) return 0;
    if (v > limit || n > limit / static_cast<std::size_t>(v)) {
      // Keep scanning: a later zero extent still makes the array empty.
      for (const Ordinal& rest : shape)
        if (rest.is_zero()) return 0;
      return std::nullopt;
    }
    n *= static_cast<std::size_t>(v);
  }
  return n;
}

bool Box::empty() const {
  for (std::size_t k = 0; k < lower.size(); ++k)
    if (!(lower[k] < upper[k])) return true;
  return false;
}

bool Box::contains(const Index& i) const {
  if (i.size() != lower.size()) return false;
  for (std::size_t k = 0; k < i.size(); ++k)
    if (i[k] < lower[k] || !(i[k] < upper[k])) return false;
  return true;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  Box r{a.lower, a.upper};
  for (std::size_t k = 0; k < a.rank(); ++k) {
    r.lower[k] = std::max(a.lower[k], b.lower[k]);
    r.upper[k] = std::min(a.upper[k], b.upper[k]);
  }
  if (r.empty()) return std::nullopt;
  return r;
}

std::vector<Box> box_subtract(const Box& outer, const Box& inner) {
  if (outer.empty()) return {};
  auto cut = intersect(outer, inner);
  if (!cut) return {outer};
  std::vector<Box> out;
  Box rest = outer;  // axes < k are narrowed to the cut as we go
  for (std::size_t k = 0; k < outer.rank(); ++k) {
    Box low = rest, high = rest;
    low.upper[k] = cut->lower[k];
    high.lower[k] = cut->upper[k];
    if (!low.empty()) out.push_back(std::move(low));
    if (!high.empty()) out.push_back(std::move(high));
    rest.lower[k] = cut->lower[k];
    rest.upper[k] = cut->upper[k];
  }
  return out;
}

bool forms_partition(const Box& frame, const std::vector<Box>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) continue;
    if (!intersect(frame, parts[i]) || *intersect(frame, parts[i]) != parts[i]) return false;
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (intersect(parts[i], parts[j])) return false;
  }
  std::vector<Box> remaining{frame};
  for (const Box& p : parts) {
    std::vector<Box> next;
    for (const Box& r : remaining)
      for (Box& piece : box_subtract(r, p)) next.push_back(std::move(piece));
    remaining = std::move(next);
  }
  return remaining.empty();
}

std::string format_index(const Index& index) {
  std::string out = "[";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) out += ", ";
    out += index[i].to_string();
  }
  return out + "]";
}

}  // namespace heh::runtime
