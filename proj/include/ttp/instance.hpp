#pragma once

#include <string>
#include <vector>

namespace ttp {

enum class EdgeWeightKind { ceil_2d, euc_2d };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct ItemRecord {
    int id = 0;         // 1-based
    double profit = 0;  // pi_j > 0
    double weight = 0;  // w_j > 0
    int city = 0;       // l_j, always > 1
    double ratio = 0;   // pi_j / w_j
};

// Immutable problem data. City ids and item ids are 1-based throughout to
// match the usual TTP conventions; index 0 of per-city/per-item vectors is
// unused padding.
class Instance {
  public:
    // Parses the full text of a .ttp file.
    static Instance parse(const std::string& text);
    static Instance parse_file(const std::string& path);

    // Assembles an instance from already-validated parts (used by generators
    // and tests). Runs the same validation as parse().
    static Instance from_parts(std::string name, std::vector<Point> coords,
                               EdgeWeightKind kind, std::vector<ItemRecord> items,
                               double capacity, double renting_rate, double v_min,
                               double v_max);

    const std::string& name() const { return name_; }
    int num_cities() const { return n_; }
    int num_items() const { return m_; }
    EdgeWeightKind edge_weight_kind() const { return kind_; }
    double capacity() const { return capacity_; }
    double renting_rate() const { return renting_rate_; }
    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    const std::string& knapsack_type() const { return knapsack_type_; }

    const Point& coord(int city) const { return coords_[static_cast<size_t>(city)]; }
    const ItemRecord& item(int id) const { return items_[static_cast<size_t>(id)]; }
    const std::vector<ItemRecord>& items() const { return items_; }

    // Item ids located at a city, sorted by descending profitability
    // (ratio desc, then profit desc, then id asc).
    const std::vector<int>& items_at(int city) const {
        return city_items_[static_cast<size_t>(city)];
    }

    // Largest profitability ratio over all items (0 when m = 0).
    double max_ratio() const { return max_ratio_; }

    double distance(int city_a, int city_b) const {
        if (!dist_matrix_.empty())
            return dist_matrix_[static_cast<size_t>(city_a) * (static_cast<size_t>(n_) + 1) +
                                static_cast<size_t>(city_b)];
        return compute_distance(city_a, city_b);
    }

    // Speed when the knapsack holds `load` weight units.
    double speed_at(double load) const {
        if (capacity_ <= 0.0) return v_max_;
        return v_max_ - load * (v_max_ - v_min_) / capacity_;
    }

  private:
    Instance() = default;
    void validate_and_finish();
    double compute_distance(int city_a, int city_b) const;

    std::string name_;
    std::string knapsack_type_;
    int n_ = 0;
    int m_ = 0;
    std::vector<Point> coords_;  // size n+1
    EdgeWeightKind kind_ = EdgeWeightKind::ceil_2d;
    std::vector<ItemRecord> items_;            // size m+1
    std::vector<std::vector<int>> city_items_;  // size n+1
    double capacity_ = 0;
    double renting_rate_ = 0;
    double v_min_ = 0;
    double v_max_ = 0;
    double max_ratio_ = 0;
    std::vector<double> dist_matrix_;  // full matrix cached when n <= 2000
};

}  // namespace ttp
