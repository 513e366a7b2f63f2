#include "pidyn/network.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pidyn {

namespace {

long long lcm_checked(long long a, long long b) {
    long long g = std::gcd(a, b);
    __int128 l = static_cast<__int128>(a / g) * b;
    if (l > std::numeric_limits<long long>::max())
        throw std::overflow_error("network: row denominator overflow");
    return static_cast<long long>(l);
}

std::vector<std::vector<std::pair<int, Rational>>> equal_weight_rows(
    const std::vector<std::vector<int>>& targets) {
    std::vector<std::vector<std::pair<int, Rational>>> rows(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) {
        long long deg = static_cast<long long>(targets[i].size());
        for (int t : targets[i]) rows[i].emplace_back(t, Rational(1, deg));
    }
    return rows;
}

}  // namespace

InfluenceNetwork InfluenceNetwork::from_rows(
    int n, const std::vector<std::vector<std::pair<int, Rational>>>& rows) {
    if (n <= 0) throw std::invalid_argument("network: node count must be positive");
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("network: row count does not match n");
    InfluenceNetwork net;
    net.n_ = n;
    net.row_den_.resize(n, 1);
    net.rows_.resize(n);
    for (int i = 0; i < n; ++i) {
        long long den = 1;
        for (const auto& [to, w] : rows[i]) {
            if (to < 0 || to >= n)
                throw std::invalid_argument("network: node id " + std::to_string(to) +
                                            " out of range in row " + std::to_string(i));
            if (w.num() <= 0)
                throw std::invalid_argument("network: non-positive weight in row " +
                                            std::to_string(i));
            den = lcm_checked(den, w.den());
        }
        net.row_den_[i] = den;
        auto& out = net.rows_[i];
        long long sum = 0;
        for (const auto& [to, w] : rows[i]) {
            out.push_back({to, w.num() * (den / w.den())});
            sum += out.back().num;
        }
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (size_t e = 1; e < out.size(); ++e)
            if (out[e].to == out[e - 1].to)
                throw std::invalid_argument("network: duplicate edge in row " + std::to_string(i));
        if (sum != den)
            throw std::invalid_argument("network: row " + std::to_string(i) + " sums to " +
                                        Rational(sum, den).str());
    }
    return net;
}

Rational InfluenceNetwork::weight(int i, int j) const {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Edge& e, int t) { return e.to < t; });
    if (it == r.end() || it->to != j) return Rational(0);
    return Rational(it->num, row_den_[i]);
}

bool InfluenceNetwork::has_edge(int i, int j) const {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Edge& e, int t) { return e.to < t; });
    return it != r.end() && it->to == j;
}

InfluenceNetwork lattice(int rows, int cols) {
    if (rows < 1 || cols < 1 || static_cast<long long>(rows) * cols < 2)
        throw std::invalid_argument("lattice: need at least 2 nodes");
    int n = rows * cols;
    std::vector<std::vector<int>> targets(n);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto& t = targets[id(r, c)];
            if (r > 0) t.push_back(id(r - 1, c));
            if (r + 1 < rows) t.push_back(id(r + 1, c));
            if (c > 0) t.push_back(id(r, c - 1));
            if (c + 1 < cols) t.push_back(id(r, c + 1));
        }
    return InfluenceNetwork::from_rows(n, equal_weight_rows(targets));
}

InfluenceNetwork erdos_renyi(int n, double p, Rng& rng) {
    if (n < 2) throw std::invalid_argument("erdos_renyi: need n >= 2");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p outside [0,1]");
    std::vector<std::vector<int>> targets(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (p >= 1.0 || (p > 0.0 && rng.bernoulli(p))) targets[i].push_back(j);
        }
    for (int i = 0; i < n; ++i)
        if (targets[i].empty()) targets[i].push_back(i);  // isolated row: self-loop of weight 1
    return InfluenceNetwork::from_rows(n, equal_weight_rows(targets));
}

InfluenceNetwork watts_strogatz(int n, int k, double beta, Rng& rng) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("watts_strogatz: k must be even and >= 2");
    if (n <= k) throw std::invalid_argument("watts_strogatz: need n > k");
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("watts_strogatz: beta outside [0,1]");
    std::set<std::pair<int, int>> edges;  // undirected, stored as (min,max)
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (int i = 0; i < n; ++i)
        for (int j = 1; j <= k / 2; ++j) edges.insert(key(i, (i + j) % n));
    // rewire each clockwise ring edge with probability beta
    for (int j = 1; j <= k / 2; ++j)
        for (int i = 0; i < n; ++i) {
            if (beta <= 0.0 || !rng.bernoulli(beta)) continue;
            int old = (i + j) % n;
            if (!edges.count(key(i, old))) continue;  // already rewired away
            // pick a fresh target avoiding self-loops and parallel edges
            int m = -1;
            for (int tries = 0; tries < 16 * n; ++tries) {
                int cand = rng.uniform_int(n);
                if (cand != i && !edges.count(key(i, cand))) {
                    m = cand;
                    break;
                }
            }
            if (m < 0) continue;  // node saturated, keep the original edge
            edges.erase(key(i, old));
            edges.insert(key(i, m));
        }
    std::vector<std::vector<int>> targets(n);
    for (const auto& [a, b] : edges) {
        targets[a].push_back(b);
        targets[b].push_back(a);
    }
    return InfluenceNetwork::from_rows(n, equal_weight_rows(targets));
}

double clustering_coefficient(const InfluenceNetwork& net) {
    int n = net.size();
    std::vector<std::set<int>> nbr(n);
    for (int i = 0; i < n; ++i)
        for (const auto& e : net.row(i)) {
            if (e.to == i) continue;
            nbr[i].insert(e.to);
            nbr[e.to].insert(i);
        }
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        size_t d = nbr[i].size();
        if (d < 2) continue;
        long long links = 0;
        for (int a : nbr[i])
            for (int b : nbr[i])
                if (a < b && nbr[a].count(b)) ++links;
        total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    return total / n;
}

double density(const InfluenceNetwork& net) {
    int n = net.size();
    if (n < 2) return 0.0;
    long long edges = 0;
    for (int i = 0; i < n; ++i)
        for (const auto& e : net.row(i))
            if (e.to != i) ++edges;
    return static_cast<double>(edges) / (static_cast<double>(n) * (n - 1));
}

InfluenceNetwork from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::vector<std::pair<int, Rational>>> rows;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("edge list, line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        if (n < 0) {
            if (line.compare(start, 2, "n=") != 0) fail("expected header n=<int>");
            try {
                size_t used = 0;
                std::string v = line.substr(start + 2);
                n = std::stoi(v, &used);
                while (used < v.size() && (v[used] == ' ' || v[used] == '\r')) ++used;
                if (used != v.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail("malformed node count");
            }
            if (n <= 0) fail("node count must be positive");
            rows.resize(n);
            continue;
        }
        std::istringstream ls(line);
        int src, dst;
        std::string wtext, extra;
        if (!(ls >> src >> dst >> wtext) || (ls >> extra)) fail("expected '<src> <dst> <num>/<den>'");
        if (src < 0 || src >= n) fail("source id " + std::to_string(src) + " out of range");
        if (dst < 0 || dst >= n) fail("target id " + std::to_string(dst) + " out of range");
        Rational w(0);
        try {
            w = Rational::parse(wtext);
        } catch (const std::exception&) {
            fail("malformed weight '" + wtext + "'");
        }
        if (w.num() <= 0) fail("weight must be positive");
        rows[src].emplace_back(dst, w);
    }
    if (n < 0) throw std::invalid_argument("edge list: missing header n=<int>");
    try {
        return InfluenceNetwork::from_rows(n, rows);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("edge list: ") + e.what());
    }
}

std::string to_edge_list(const InfluenceNetwork& net) {
    std::ostringstream out;
    out << "n=" << net.size() << "\n";
    for (int i = 0; i < net.size(); ++i)
        for (const auto& e : net.row(i))
            out << i << " " << e.to << " " << Rational(e.num, net.row_den(i)).str() << "\n";
    return out.str();
}

InfluenceNetwork load_network(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open network file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_edge_list(buf.str());
}

void save_network(const InfluenceNetwork& net, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw std::runtime_error("cannot write file: " + tmp);
        f << to_edge_list(net);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace pidyn
