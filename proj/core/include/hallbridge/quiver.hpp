#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hallbridge {

/// An integer vector indexed by vertices: a dimension vector or a K0 class.
using Weight = std::vector<int>;

Weight operator+(const Weight& x, const Weight& y);
Weight operator-(const Weight& x, const Weight& y);
Weight operator-(const Weight& x);
Weight& operator+=(Weight& x, const Weight& y);
Weight& operator-=(Weight& x, const Weight& y);
Weight operator*(int s, const Weight& x);
bool is_zero(const Weight& w);
bool is_nonnegative(const Weight& w);
/// Componentwise x <= y.
bool dominated_by(const Weight& x, const Weight& y);
int total(const Weight& w);
std::string to_string(const Weight& w);
/// Parses "a,b,c".
Weight parse_weight(const std::string& text);

struct Arrow {
  int source;
  int target;
  std::string label;
};

struct QuiverPresentation {
  std::vector<std::string> vertices;
  struct ArrowSpec {
    std::string from;
    std::string to;
    std::string label;
  };
  std::vector<ArrowSpec> arrows;
};

/// Which bilinear form a convention site uses.
enum class Bracket { kAngle, kSymmetric };

/// A validated acyclic quiver.
class Quiver {
 public:
  /// Throws FormatError on duplicate labels or unknown endpoints and
  /// ContractViolation when an oriented cycle exists.
  static Quiver validate(const QuiverPresentation& spec);
  static Quiver from_json(const std::string& text);
  static Quiver from_file(const std::string& path);
  std::string to_json() const;

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<int>& topological_order() const { return order_; }
  /// Stable hash of the presentation, used to scope cache records.
  std::uint64_t fingerprint() const { return fingerprint_; }

  Weight zero() const { return Weight(static_cast<size_t>(num_vertices()), 0); }
  Weight unit(int vertex) const;

  /// Euler form <d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j.
  int euler(const Weight& d, const Weight& e) const;
  /// (d, e) = <d, e> + <e, d>.
  int symmetric_euler(const Weight& d, const Weight& e) const { return euler(d, e) + euler(e, d); }
  int bracket(Bracket b, const Weight& d, const Weight& e) const {
    return b == Bracket::kAngle ? euler(d, e) : symmetric_euler(d, e);
  }

  /// Paths from i to j as arrow index sequences (the trivial path when i == j).
  const std::vector<std::vector<int>>& paths(int i, int j) const;
  /// Dimension vector of the indecomposable projective P_i.
  Weight projective_dim(int i) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Arrow> arrows_;
  std::vector<int> order_;
  std::vector<std::vector<std::vector<std::vector<int>>>> paths_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace hallbridge
