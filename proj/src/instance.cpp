#include "ttp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ttp/errors.hpp"

namespace ttp {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

double parse_real(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (trim(text.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw MalformedHeader("bad numeric value for " + what + ": '" + text + "'");
}

long parse_int(const std::string& text, const std::string& what) {
    double v = parse_real(text, what);
    long i = static_cast<long>(v);
    if (static_cast<double>(i) != v)
        throw MalformedHeader(what + " must be an integer: '" + text + "'");
    return i;
}

}  // namespace

Instance Instance::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;

    // Header keys seen so far; duplicates are rejected.
    struct Header {
        bool seen = false;
        std::string value;
    };
    const char* keys[] = {"PROBLEM NAME",         "KNAPSACK DATA TYPE", "DIMENSION",
                          "NUMBER OF ITEMS",      "CAPACITY OF KNAPSACK", "MIN SPEED",
                          "MAX SPEED",            "RENTING RATIO",      "EDGE_WEIGHT_TYPE"};
    constexpr int num_keys = 9;
    Header headers[num_keys];

    bool in_coords = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (starts_with(t, "NODE_COORD_SECTION")) {
            in_coords = true;
            break;
        }
        size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw MalformedHeader("expected 'KEY: value' line, got '" + t + "'");
        std::string key = trim(t.substr(0, colon));
        std::string value = trim(t.substr(colon + 1));
        bool matched = false;
        for (int i = 0; i < num_keys; ++i) {
            if (key == keys[i]) {
                if (headers[i].seen) throw MalformedHeader("duplicate header key: " + key);
                headers[i].seen = true;
                headers[i].value = value;
                matched = true;
                break;
            }
        }
        if (!matched) throw MalformedHeader("unknown header key: " + key);
    }
    for (int i = 0; i < num_keys; ++i)
        if (!headers[i].seen) throw MalformedHeader(std::string("missing header key: ") + keys[i]);
    if (!in_coords) throw MalformedHeader("missing NODE_COORD_SECTION");

    Instance inst;
    inst.name_ = headers[0].value;
    inst.knapsack_type_ = headers[1].value;
    long n = parse_int(headers[2].value, "DIMENSION");
    long m = parse_int(headers[3].value, "NUMBER OF ITEMS");
    if (n < 2) throw MalformedHeader("DIMENSION must be at least 2");
    if (m < 0) throw MalformedHeader("NUMBER OF ITEMS must be nonnegative");
    inst.n_ = static_cast<int>(n);
    inst.m_ = static_cast<int>(m);
    inst.capacity_ = parse_real(headers[4].value, "CAPACITY OF KNAPSACK");
    inst.v_min_ = parse_real(headers[5].value, "MIN SPEED");
    inst.v_max_ = parse_real(headers[6].value, "MAX SPEED");
    inst.renting_rate_ = parse_real(headers[7].value, "RENTING RATIO");

    const std::string ew = headers[8].value;
    if (ew == "CEIL_2D")
        inst.kind_ = EdgeWeightKind::ceil_2d;
    else if (ew == "EUC_2D")
        inst.kind_ = EdgeWeightKind::euc_2d;
    else
        throw MalformedHeader("unsupported EDGE_WEIGHT_TYPE: " + ew);

    // Coordinate rows: "index x y", indices 1..n in order.
    inst.coords_.assign(static_cast<size_t>(inst.n_) + 1, Point{});
    int coords_read = 0;
    bool in_items = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (starts_with(t, "ITEMS SECTION")) {
            in_items = true;
            break;
        }
        std::istringstream row(t);
        long idx;
        double x, y;
        if (!(row >> idx >> x >> y))
            throw CountMismatch("bad node coord row: '" + t + "'");
        if (coords_read >= inst.n_)
            throw CountMismatch("more coordinate rows than DIMENSION");
        if (idx != coords_read + 1)
            throw CountMismatch("node indices must be 1-based and contiguous");
        inst.coords_[static_cast<size_t>(idx)] = Point{x, y};
        ++coords_read;
    }
    if (coords_read != inst.n_) throw CountMismatch("fewer coordinate rows than DIMENSION");
    if (!in_items && inst.m_ > 0) throw CountMismatch("missing ITEMS SECTION");

    // Item rows: "index profit weight city".
    inst.items_.assign(static_cast<size_t>(inst.m_) + 1, ItemRecord{});
    int items_read = 0;
    if (in_items) {
        while (std::getline(in, line)) {
            std::string t = trim(line);
            if (t.empty()) continue;
            std::istringstream row(t);
            long idx, city;
            double profit, weight;
            if (!(row >> idx >> profit >> weight >> city))
                throw CountMismatch("bad item row: '" + t + "'");
            if (items_read >= inst.m_) throw CountMismatch("more item rows than NUMBER OF ITEMS");
            if (idx != items_read + 1)
                throw CountMismatch("item indices must be 1-based and contiguous");
            ItemRecord rec;
            rec.id = static_cast<int>(idx);
            rec.profit = profit;
            rec.weight = weight;
            rec.city = static_cast<int>(city);
            inst.items_[static_cast<size_t>(idx)] = rec;
            ++items_read;
        }
        if (items_read != inst.m_) throw CountMismatch("fewer item rows than NUMBER OF ITEMS");
    }

    inst.validate_and_finish();
    return inst;
}

Instance Instance::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Instance Instance::from_parts(std::string name, std::vector<Point> coords,
                              EdgeWeightKind kind, std::vector<ItemRecord> items,
                              double capacity, double renting_rate, double v_min,
                              double v_max) {
    Instance inst;
    inst.name_ = std::move(name);
    inst.knapsack_type_ = "custom";
    inst.n_ = static_cast<int>(coords.size());
    inst.kind_ = kind;
    inst.capacity_ = capacity;
    inst.renting_rate_ = renting_rate;
    inst.v_min_ = v_min;
    inst.v_max_ = v_max;
    inst.coords_.clear();
    inst.coords_.reserve(coords.size() + 1);
    inst.coords_.push_back(Point{});
    inst.coords_.insert(inst.coords_.end(), coords.begin(), coords.end());

    inst.m_ = static_cast<int>(items.size());
    inst.items_.clear();
    inst.items_.reserve(items.size() + 1);
    inst.items_.push_back(ItemRecord{});
    for (int i = 0; i < inst.m_; ++i) {
        ItemRecord rec = items[static_cast<size_t>(i)];
        rec.id = i + 1;
        inst.items_.push_back(rec);
    }
    if (inst.n_ < 2) throw MalformedHeader("an instance needs at least 2 cities");
    inst.validate_and_finish();
    return inst;
}

void Instance::validate_and_finish() {
    if (v_min_ <= 0 || v_max_ <= 0) throw NonPositiveValue("speeds must be positive");
    if (v_min_ > v_max_) throw NonPositiveValue("MIN SPEED must not exceed MAX SPEED");
    if (capacity_ < 0) throw NonPositiveValue("knapsack capacity must be nonnegative");
    if (renting_rate_ < 0) throw NonPositiveValue("renting ratio must be nonnegative");

    max_ratio_ = 0.0;
    for (int j = 1; j <= m_; ++j) {
        ItemRecord& rec = items_[static_cast<size_t>(j)];
        if (rec.weight <= 0) throw NonPositiveValue("item weight must be positive");
        if (rec.profit <= 0) throw NonPositiveValue("item profit must be positive");
        if (rec.city <= 1 || rec.city > n_)
            throw BadItemCity("item city must be in (1, n]; city 1 holds no items");
        rec.ratio = rec.profit / rec.weight;
        if (!std::isfinite(rec.ratio) || rec.ratio <= 0)
            throw NonPositiveValue("item ratio must be finite and positive");
        max_ratio_ = std::max(max_ratio_, rec.ratio);
    }

    city_items_.assign(static_cast<size_t>(n_) + 1, {});
    for (int j = 1; j <= m_; ++j) city_items_[static_cast<size_t>(items_[static_cast<size_t>(j)].city)].push_back(j);
    for (auto& list : city_items_) {
        std::sort(list.begin(), list.end(), [this](int a, int b) {
            const ItemRecord& ia = items_[static_cast<size_t>(a)];
            const ItemRecord& ib = items_[static_cast<size_t>(b)];
            if (ia.ratio != ib.ratio) return ia.ratio > ib.ratio;
            if (ia.profit != ib.profit) return ia.profit > ib.profit;
            return a < b;
        });
    }

    // Full distance matrix for moderate sizes; computed on demand above that.
    if (n_ <= 2000) {
        const size_t stride = static_cast<size_t>(n_) + 1;
        dist_matrix_.assign(stride * stride, 0.0);
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j) {
                double d = compute_distance(i, j);
                dist_matrix_[static_cast<size_t>(i) * stride + static_cast<size_t>(j)] = d;
                dist_matrix_[static_cast<size_t>(j) * stride + static_cast<size_t>(i)] = d;
            }
    }
}

double Instance::compute_distance(int city_a, int city_b) const {
    if (city_a == city_b) return 0.0;
    const Point& a = coords_[static_cast<size_t>(city_a)];
    const Point& b = coords_[static_cast<size_t>(city_b)];
    double eu = std::hypot(a.x - b.x, a.y - b.y);
    if (kind_ == EdgeWeightKind::ceil_2d) return std::ceil(eu);
    return std::floor(eu + 0.5);  // TSPLIB EUC_2D nint rounding
}

}  // namespace ttp
