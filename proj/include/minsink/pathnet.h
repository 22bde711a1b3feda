#ifndef MINSINK_PATHNET_H_
#define MINSINK_PATHNET_H_

#include <cstdint>
#include <vector>

namespace minsink {

// Dynamic flow path network. Vertices are 1..n; edge e_i joins v_i and v_{i+1}.
// Vectors are stored 0-based: weights[i-1] = w_i, lengths[i-1] = l_i.
struct PathNetwork {
  int n = 0;
  std::vector<double> weights;
  std::vector<double> lengths;
  std::vector<double> capacities;
  double tau = 1.0;

  // Throws std::invalid_argument when a field violates the model.
  void Validate() const;
  bool HasUniformCapacity() const;
};

// Same network read from v_n towards v_1.
PathNetwork Mirror(const PathNetwork& net);

// Sparse table over edge capacities. Query(i, j) = min(c_i..c_{j-1}).
class MinCapacityTable {
 public:
  MinCapacityTable() = default;
  explicit MinCapacityTable(const std::vector<double>& capacities);

  double Query(int i, int j) const {
    const int a = i - 1, b = j - 1;  // half-open [a, b) over the 0-based array
    const int level = Log2(b - a);
    const double x = table_[level][a];
    const double y = table_[level][b - (1 << level)];
    return x < y ? x : y;
  }

  // Smallest q in (i, j_max] with min(c_i..c_{q-1}) < bound, or j_max + 1.
  int FirstBelow(int i, int j_max, double bound) const;

  size_t MemoryBytes() const;

 private:
  static int Log2(int x) { return 31 - __builtin_clz(static_cast<unsigned>(x)); }

  std::vector<std::vector<double>> table_;
};

struct PrefixTables {
  int n = 0;
  double tau = 1.0;
  std::vector<double> W;     // W[0] = 0, W[i] = w_1 + ... + w_i
  std::vector<double> Lcum;  // Lcum[1] = 0, Lcum[i] = l_1 + ... + l_{i-1}
  MinCapacityTable rmq;
  bool uniform = false;

  double Dist(int i, int j) const { return Lcum[j] - Lcum[i]; }
  double Cap(int i, int j) const { return rmq.Query(i, j); }
  double Total() const { return W[n]; }
};

PrefixTables BuildTables(const PathNetwork& net);

// C_{i,j} with argument checks; 1 <= i < j <= n.
double MinCapacity(const PrefixTables& tables, int i, int j);

}  // namespace minsink

#endif  // MINSINK_PATHNET_H_
