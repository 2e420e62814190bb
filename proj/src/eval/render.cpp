#include <sstream>

#include "heh/eval/session.hpp"

namespace heh::eval {

using namespace runtime;

std::string render_scalar(const Scalar& s) {
  if (const auto* o = std::get_if<Ordinal>(&s)) return o->to_string();
  if (const auto* b = std::get_if<bool>(&s)) return *b ? "true" : "false";
  return "<fun \\" + std::get<FunPtr>(s)->param + ">";
}

namespace {

void render_strict(std::ostringstream& out, const StrictArray& a, std::size_t axis,
                   std::size_t& offset) {
  if (axis == a.shape.size()) {
    out << render_scalar(a.data[offset++]);
    return;
  }
  const std::uint64_t n = a.shape[axis].to_u64();
  out << '[';
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i) out << ", ";
    render_strict(out, a, axis + 1, offset);
  }
  out << ']';
}

// One run of consecutive positions along an axis shown in a preview.
struct Segment {
  Ordinal start;
  std::uint64_t count;
  bool truncated;  // more elements follow in this segment
};

// Splits an extent into its CNF blocks: each w^e block (e >= 1) shows its
// first k positions, the finite tail shows up to k positions.
std::vector<Segment> segments_of(const Ordinal& extent, std::size_t k, bool& more_blocks) {
  std::vector<Segment> out;
  more_blocks = false;
  Ordinal prefix;
  for (const Term& t : extent.terms()) {
    if (t.exponent == 0) {
      const bool cut = t.coefficient > k;
      out.push_back({prefix, cut ? k : static_cast<std::uint64_t>(t.coefficient), cut});
      break;
    }
    const Ordinal block = Ordinal::omega_power(t.exponent);
    const bool cut = t.coefficient > k;
    const std::uint64_t copies = cut ? k : static_cast<std::uint64_t>(t.coefficient);
    for (std::uint64_t j = 0; j < copies; ++j)
      out.push_back({prefix + block * Ordinal(j), static_cast<std::uint64_t>(k), true});
    if (cut) {
      more_blocks = true;
      break;
    }
    prefix = prefix + Ordinal::omega_power(t.exponent, t.coefficient);
  }
  return out;
}

constexpr std::uint64_t kElementBudget = 50000;

class Previewer {
 public:
  Previewer(Evaluator& ev, std::size_t k) : ev_(ev), k_(k) {}

  std::string run(Handle h, const Index& shape) {
    Index prefix;
    axis(h, shape, prefix);
    return out_.str();
  }

 private:
  Evaluator& ev_;
  std::size_t k_;
  std::ostringstream out_;

  bool is_filter(Handle h) {
    return std::holds_alternative<std::unique_ptr<FilterClosure>>(ev_.store().at(h));
  }

  void axis(Handle h, const Index& shape, Index& prefix) {
    const std::size_t d = prefix.size();
    if (d == shape.size()) {
      element(h, prefix);
      return;
    }
    bool more_blocks = false;
    const auto segs = segments_of(shape[d], k_, more_blocks);
    out_ << '[';
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (s) out_ << "; ";
      if (!segs[s].start.is_zero()) out_ << segs[s].start.to_string() << ": ";
      if (d == 0 && shape.size() == 1 && is_filter(h)) {
        filter_segment(h, segs[s]);
        continue;
      }
      for (std::uint64_t i = 0; i < segs[s].count; ++i) {
        if (i) out_ << ", ";
        prefix.push_back(segs[s].start + Ordinal(i));
        axis(h, shape, prefix);
        prefix.pop_back();
      }
      if (segs[s].truncated) out_ << (segs[s].count ? ", ..." : "...");
    }
    if (more_blocks) out_ << "; ...";
    out_ << ']';
  }

  // Each shown element gets its own rule budget; an element that needs more
  // prints as `?` instead of stalling the preview.
  void element(Handle h, const Index& index) {
    const auto saved = ev_.remaining_fuel();
    const bool capped = !saved || *saved > kElementBudget;
    if (capped) ev_.set_remaining_fuel(kElementBudget);
    try {
      out_ << render_scalar(ev_.force_scalar(ev_.select(h, index)));
    } catch (const EvalError& e) {
      if (!capped || e.kind() != ErrorKind::FuelExhausted) throw;
      out_ << '?';
    }
    if (capped && saved) {
      const std::uint64_t used = kElementBudget - ev_.remaining_fuel().value_or(0);
      ev_.set_remaining_fuel(*saved - used);
    } else if (capped) {
      ev_.set_remaining_fuel(std::nullopt);
    }
  }

  // Filter segments may hold few accepted elements; scanning is budgeted so
  // printing always terminates.
  void filter_segment(Handle h, const Segment& seg) {
    const std::size_t budget = 1000 * (k_ + 1);
    const auto got = ev_.filter_peek(h, seg.start, seg.count, budget);
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (i) out_ << ", ";
      out_ << render_scalar(ev_.force_scalar(got[i]));
    }
    if (seg.truncated || got.size() < seg.count) out_ << (got.empty() ? "..." : ", ...");
  }
};

std::string shape_text(const Index& s) { return format_index(s); }

}  // namespace

std::string Session::render(Handle h, std::size_t force_elements) {
  return request([&] {
    Evaluator& ev = evaluator_;
    Value& v = store_.at(h);
    std::ostringstream out;
    if (const auto* a = std::get_if<StrictArray>(&v)) {
      std::size_t offset = 0;
      render_strict(out, *a, 0, offset);
      return out.str();
    }
    Index shape;
    if (const auto* c = std::get_if<std::unique_ptr<ImapClosure>>(&v)) {
      out << "<imap shape=" << shape_text((*c)->frame);
      if (!(*c)->cell.empty()) out << '|' << shape_text((*c)->cell);
      out << '>';
      shape = ev.shape_of(h);
    } else {
      shape = ev.shape_of(h);
      out << "<filter shape=" << shape_text(shape) << '>';
    }
    if (force_elements > 0) out << ' ' << Previewer(ev, force_elements).run(h, shape);
    return out.str();
  });
}

}  // namespace heh::eval
