#pragma once

// Closed intervals, axis-aligned boxes, finite box unions and the uniform grid
// partitioning that every reachability routine is built on. All sets are closed:
// boxes that touch on a face or a corner intersect.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nnreach {

class Interval {
 public:
  Interval() = default;
  // Throws ArgumentError unless lo <= hi and both are finite.
  Interval(double lo, double hi);

  static Interval point(double x) { return Interval(x, x); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool intersects(const Interval& other) const noexcept {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(double k, const Interval& a);
Interval hull(const Interval& a, const Interval& b);

class HyperBox {
 public:
  // Throws ArgumentError for zero dimensions.
  explicit HyperBox(std::vector<Interval> dims);
  HyperBox(std::initializer_list<Interval> dims);

  static HyperBox from_bounds(std::span<const double> lo, std::span<const double> hi);
  static HyperBox point(std::span<const double> x);
  // [center - radius, center + radius] in every coordinate.
  static HyperBox cube(std::span<const double> center, double radius);

  std::size_t dim() const noexcept { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  std::span<const Interval> intervals() const noexcept { return dims_; }

  std::vector<double> lower() const;
  std::vector<double> upper() const;
  double volume() const noexcept;
  double max_width() const noexcept;

  bool contains(std::span<const double> x) const;
  bool contains(const HyperBox& other) const;

  // Grows every side by eps >= 0 on both ends.
  HyperBox inflated(double eps) const;

  friend bool operator==(const HyperBox&, const HyperBox&) = default;

 private:
  std::vector<Interval> dims_;
};

// Number of equal segments per dimension.
class PartitionSpec {
 public:
  PartitionSpec() = default;
  // Throws ArgumentError if any count is zero.
  explicit PartitionSpec(std::vector<std::size_t> counts);
  PartitionSpec(std::initializer_list<std::size_t> counts)
      : PartitionSpec(std::vector<std::size_t>(counts)) {}

  // Same count in every one of `dim` dimensions.
  static PartitionSpec uniform(std::size_t dim, std::size_t count);

  std::size_t dim() const noexcept { return counts_.size(); }
  std::size_t operator[](std::size_t i) const { return counts_[i]; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  std::size_t cell_count() const noexcept;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  std::vector<std::size_t> counts_;
};

// A finite union of equal-dimension boxes. Each box may carry the index of the
// partition cell it was computed from (kNoSource otherwise).
class BoxUnion {
 public:
  static constexpr std::size_t kNoSource = static_cast<std::size_t>(-1);

  // The empty set in `dim` dimensions.
  explicit BoxUnion(std::size_t dim);
  explicit BoxUnion(HyperBox box);
  explicit BoxUnion(std::vector<HyperBox> boxes);
  BoxUnion(std::vector<HyperBox> boxes, std::vector<std::size_t> sources);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return boxes_.size(); }
  bool empty() const noexcept { return boxes_.empty(); }

  const HyperBox& operator[](std::size_t i) const { return boxes_[i]; }
  const std::vector<HyperBox>& boxes() const noexcept { return boxes_; }
  std::size_t source(std::size_t i) const { return sources_[i]; }
  const std::vector<std::size_t>& sources() const noexcept { return sources_; }

  void push_back(HyperBox box, std::size_t source = kNoSource);

  bool contains(std::span<const double> x) const;
  double volume_sum() const noexcept;

  auto begin() const noexcept { return boxes_.begin(); }
  auto end() const noexcept { return boxes_.end(); }

 private:
  std::size_t dim_;
  std::vector<HyperBox> boxes_;
  std::vector<std::size_t> sources_;
};

// Grid coordinate j in [0, count] over `range`: lo + (j / count) * width, with
// j == count pinned to hi.
double grid_boundary(const Interval& range, std::size_t j, std::size_t count);

// Splits h into prod(M_i) closed cells in lexicographic order of the multi-index
// (first dimension slowest). Cell k carries source index k.
BoxUnion partition_box(const HyperBox& h, const PartitionSpec& m);

// Multi-index of grid cell `index` under partition m.
std::vector<std::size_t> cell_multi_index(std::size_t index, const PartitionSpec& m);

// Partitions `bounding` and keeps the cells that intersect some box of h. Source
// indices refer to the full grid over `bounding`.
BoxUnion partition_union(const BoxUnion& h, const HyperBox& bounding, const PartitionSpec& m);

bool boxes_intersect(const HyperBox& a, const HyperBox& b);

// Smallest box containing every box of u. Throws EmptySetError on the empty union.
HyperBox interval_hull(const BoxUnion& u);

HyperBox cartesian_product(const HyperBox& a, const HyperBox& b);

double distance_to_box(const HyperBox& box, std::span<const double> x);

// Largest Euclidean distance from a sample to its nearest box; 0 when every sample
// is covered. Throws ArgumentError for an empty sample set.
double sampled_hausdorff_gap(const BoxUnion& estimate,
                             const std::vector<std::vector<double>>& samples);

// True when `box` is covered by the union of `cover` (exact, via the grid induced
// by the cover's boundaries inside `box`).
bool box_covered_by(const HyperBox& box, std::span<const HyperBox> cover);

}  // namespace nnreach
