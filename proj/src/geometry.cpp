#include "nnreach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nnreach/error.hpp"

namespace nnreach {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw ArgumentError("interval endpoints must be finite");
  if (lo > hi)
    throw ArgumentError("interval lower bound " + std::to_string(lo) + " exceeds upper bound " +
                        std::to_string(hi));
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b) {
  const double p[] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
  return Interval(*std::min_element(std::begin(p), std::end(p)),
                  *std::max_element(std::begin(p), std::end(p)));
}

Interval operator*(double k, const Interval& a) {
  return k >= 0.0 ? Interval(k * a.lo(), k * a.hi()) : Interval(k * a.hi(), k * a.lo());
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

// --- HyperBox ---------------------------------------------------------------

HyperBox::HyperBox(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ArgumentError("a box needs at least one dimension");
}

HyperBox::HyperBox(std::initializer_list<Interval> dims) : HyperBox(std::vector<Interval>(dims)) {}

HyperBox HyperBox::from_bounds(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size())
    throw ArgumentError("lower and upper bound vectors differ in length");
  std::vector<Interval> dims;
  dims.reserve(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) dims.emplace_back(lo[i], hi[i]);
  return HyperBox(std::move(dims));
}

HyperBox HyperBox::point(std::span<const double> x) { return from_bounds(x, x); }

HyperBox HyperBox::cube(std::span<const double> center, double radius) {
  if (!(radius >= 0.0)) throw ArgumentError("cube radius must be non-negative");
  std::vector<Interval> dims;
  dims.reserve(center.size());
  for (double c : center) dims.emplace_back(c - radius, c + radius);
  return HyperBox(std::move(dims));
}

std::vector<double> HyperBox::lower() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.lo());
  return out;
}

std::vector<double> HyperBox::upper() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.hi());
  return out;
}

double HyperBox::volume() const noexcept {
  double v = 1.0;
  for (const auto& d : dims_) v *= d.width();
  return v;
}

double HyperBox::max_width() const noexcept {
  double w = 0.0;
  for (const auto& d : dims_) w = std::max(w, d.width());
  return w;
}

bool HyperBox::contains(std::span<const double> x) const {
  if (x.size() != dims_.size()) throw ArgumentError("point dimension does not match box");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!dims_[i].contains(x[i])) return false;
  return true;
}

bool HyperBox::contains(const HyperBox& other) const {
  if (other.dim() != dim()) throw ArgumentError("box dimensions differ");
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (!dims_[i].contains(other.dims_[i])) return false;
  return true;
}

HyperBox HyperBox::inflated(double eps) const {
  if (!(eps >= 0.0)) throw ArgumentError("padding must be non-negative");
  if (eps == 0.0) return *this;
  std::vector<Interval> dims;
  dims.reserve(dims_.size());
  for (const auto& d : dims_) dims.emplace_back(d.lo() - eps, d.hi() + eps);
  return HyperBox(std::move(dims));
}

// --- PartitionSpec ----------------------------------------------------------

PartitionSpec::PartitionSpec(std::vector<std::size_t> counts) : counts_(std::move(counts)) {
  for (std::size_t c : counts_)
    if (c < 1) throw ArgumentError("partition counts must be at least 1");
}

PartitionSpec PartitionSpec::uniform(std::size_t dim, std::size_t count) {
  return PartitionSpec(std::vector<std::size_t>(dim, count));
}

std::size_t PartitionSpec::cell_count() const noexcept {
  std::size_t n = 1;
  for (std::size_t c : counts_) n *= c;
  return n;
}

// --- BoxUnion ---------------------------------------------------------------

BoxUnion::BoxUnion(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ArgumentError("a box union needs at least one dimension");
}

BoxUnion::BoxUnion(HyperBox box) : dim_(box.dim()) { push_back(std::move(box)); }

BoxUnion::BoxUnion(std::vector<HyperBox> boxes)
    : BoxUnion(std::move(boxes), std::vector<std::size_t>()) {}

BoxUnion::BoxUnion(std::vector<HyperBox> boxes, std::vector<std::size_t> sources)
    : dim_(0), boxes_(std::move(boxes)), sources_(std::move(sources)) {
  if (boxes_.empty()) throw ArgumentError("use BoxUnion(dim) for the empty set");
  dim_ = boxes_.front().dim();
  for (const auto& b : boxes_)
    if (b.dim() != dim_) throw ArgumentError("boxes of a union must share one dimension");
  if (sources_.empty()) sources_.assign(boxes_.size(), kNoSource);
  if (sources_.size() != boxes_.size())
    throw ArgumentError("source index list does not match box count");
}

void BoxUnion::push_back(HyperBox box, std::size_t source) {
  if (box.dim() != dim_) throw ArgumentError("box dimension does not match union");
  boxes_.push_back(std::move(box));
  sources_.push_back(source);
}

bool BoxUnion::contains(std::span<const double> x) const {
  return std::any_of(boxes_.begin(), boxes_.end(),
                     [&](const HyperBox& b) { return b.contains(x); });
}

double BoxUnion::volume_sum() const noexcept {
  double v = 0.0;
  for (const auto& b : boxes_) v += b.volume();
  return v;
}

// --- partitioning -----------------------------------------------------------

double grid_boundary(const Interval& range, std::size_t j, std::size_t count) {
  if (j == 0) return range.lo();
  if (j >= count) return range.hi();
  // j / count is evaluated first so that refined grids (count' = k * count) reproduce
  // the coarse boundaries bit for bit.
  const double t = static_cast<double>(j) / static_cast<double>(count);
  return std::min(range.lo() + t * range.width(), range.hi());
}

std::vector<std::size_t> cell_multi_index(std::size_t index, const PartitionSpec& m) {
  std::vector<std::size_t> mi(m.dim());
  for (std::size_t k = m.dim(); k-- > 0;) {
    mi[k] = index % m[k];
    index /= m[k];
  }
  return mi;
}

namespace {

std::vector<std::vector<Interval>> axis_segments(const HyperBox& h, const PartitionSpec& m) {
  if (m.dim() != h.dim())
    throw ArgumentError("partition has " + std::to_string(m.dim()) + " counts but the box has " +
                        std::to_string(h.dim()) + " dimensions");
  std::vector<std::vector<Interval>> segments(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) {
    segments[i].reserve(m[i]);
    double prev = h[i].lo();
    for (std::size_t j = 1; j <= m[i]; ++j) {
      const double next = grid_boundary(h[i], j, m[i]);
      segments[i].emplace_back(prev, next);
      prev = next;
    }
  }
  return segments;
}

HyperBox grid_cell(const std::vector<std::vector<Interval>>& segments,
                   const std::vector<std::size_t>& mi) {
  std::vector<Interval> dims;
  dims.reserve(mi.size());
  for (std::size_t i = 0; i < mi.size(); ++i) dims.push_back(segments[i][mi[i]]);
  return HyperBox(std::move(dims));
}

// Advances a lexicographic multi-index; returns false after the last one.
bool next_multi_index(std::vector<std::size_t>& mi, const PartitionSpec& m) {
  for (std::size_t k = mi.size(); k-- > 0;) {
    if (++mi[k] < m[k]) return true;
    mi[k] = 0;
  }
  return false;
}

}  // namespace

BoxUnion partition_box(const HyperBox& h, const PartitionSpec& m) {
  const auto segments = axis_segments(h, m);
  std::vector<HyperBox> cells;
  std::vector<std::size_t> sources;
  cells.reserve(m.cell_count());
  sources.reserve(m.cell_count());
  std::vector<std::size_t> mi(h.dim(), 0);
  std::size_t index = 0;
  do {
    cells.push_back(grid_cell(segments, mi));
    sources.push_back(index++);
  } while (next_multi_index(mi, m));
  return BoxUnion(std::move(cells), std::move(sources));
}

BoxUnion partition_union(const BoxUnion& h, const HyperBox& bounding, const PartitionSpec& m) {
  if (h.dim() != bounding.dim()) throw ArgumentError("bounding box dimension does not match set");
  for (const auto& b : h)
    if (!bounding.contains(b)) throw ArgumentError("bounding box does not contain the input set");
  const auto segments = axis_segments(bounding, m);
  BoxUnion kept(h.dim());
  std::vector<std::size_t> mi(h.dim(), 0);
  std::size_t index = 0;
  do {
    HyperBox cell = grid_cell(segments, mi);
    const bool hit = std::any_of(h.begin(), h.end(),
                                 [&](const HyperBox& b) { return boxes_intersect(cell, b); });
    if (hit) kept.push_back(std::move(cell), index);
    ++index;
  } while (next_multi_index(mi, m));
  return kept;
}

// --- predicates and combinators ---------------------------------------------

bool boxes_intersect(const HyperBox& a, const HyperBox& b) {
  if (a.dim() != b.dim()) throw ArgumentError("box dimensions differ");
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!a[i].intersects(b[i])) return false;
  return true;
}

HyperBox interval_hull(const BoxUnion& u) {
  if (u.empty()) throw EmptySetError("interval hull of an empty union");
  std::vector<double> lo = u[0].lower();
  std::vector<double> hi = u[0].upper();
  for (const auto& b : u) {
    for (std::size_t i = 0; i < b.dim(); ++i) {
      lo[i] = std::min(lo[i], b[i].lo());
      hi[i] = std::max(hi[i], b[i].hi());
    }
  }
  return HyperBox::from_bounds(lo, hi);
}

HyperBox cartesian_product(const HyperBox& a, const HyperBox& b) {
  std::vector<Interval> dims(a.intervals().begin(), a.intervals().end());
  dims.insert(dims.end(), b.intervals().begin(), b.intervals().end());
  return HyperBox(std::move(dims));
}

double distance_to_box(const HyperBox& box, std::span<const double> x) {
  if (x.size() != box.dim()) throw ArgumentError("point dimension does not match box");
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = 0.0;
    if (x[i] < box[i].lo())
      d = box[i].lo() - x[i];
    else if (x[i] > box[i].hi())
      d = x[i] - box[i].hi();
    sq += d * d;
  }
  return std::sqrt(sq);
}

double sampled_hausdorff_gap(const BoxUnion& estimate,
                             const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw ArgumentError("sample set is empty");
  if (estimate.empty()) throw EmptySetError("estimate is empty");
  double gap = 0.0;
  for (const auto& x : samples) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : estimate) {
      nearest = std::min(nearest, distance_to_box(b, x));
      if (nearest == 0.0) break;
    }
    gap = std::max(gap, nearest);
  }
  return gap;
}

bool box_covered_by(const HyperBox& box, std::span<const HyperBox> cover) {
  std::vector<const HyperBox*> candidates;
  for (const auto& c : cover) {
    if (c.dim() != box.dim()) throw ArgumentError("box dimensions differ");
    if (c.contains(box)) return true;
    if (boxes_intersect(c, box)) candidates.push_back(&c);
  }
  if (candidates.empty()) return false;

  const std::size_t n = box.dim();
  std::vector<std::vector<double>> cuts(n);
  for (std::size_t i = 0; i < n; ++i) {
    cuts[i] = {box[i].lo(), box[i].hi()};
    for (const auto* c : candidates) {
      if (box[i].contains((*c)[i].lo())) cuts[i].push_back((*c)[i].lo());
      if (box[i].contains((*c)[i].hi())) cuts[i].push_back((*c)[i].hi());
    }
    std::sort(cuts[i].begin(), cuts[i].end());
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
  }

  // Each elementary cell is either inside a candidate or has interior outside all of them.
  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = std::max<std::size_t>(cuts[i].size() - 1, 1);
  const PartitionSpec grid(counts);
  std::vector<std::size_t> mi(n, 0);
  do {
    std::vector<Interval> dims;
    dims.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = cuts[i];
      dims.push_back(c.size() == 1 ? Interval::point(c[0]) : Interval(c[mi[i]], c[mi[i] + 1]));
    }
    const HyperBox cell(std::move(dims));
    const bool covered = std::any_of(candidates.begin(), candidates.end(),
                                     [&](const HyperBox* c) { return c->contains(cell); });
    if (!covered) return false;
  } while (next_multi_index(mi, grid));
  return true;
}

}  // namespace nnreach
