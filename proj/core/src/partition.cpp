#include "polarscope/partition.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "polarscope/csvio.hpp"
#include "polarscope/errors.hpp"

namespace polarscope {

std::optional<std::uint32_t> Partition::group_of(std::string_view user) const {
    const auto it = std::lower_bound(users.begin(), users.end(), user);
    if (it == users.end() || *it != user) return std::nullopt;
    return groups[static_cast<std::size_t>(it - users.begin())];
}

std::vector<std::int64_t> Partition::group_sizes() const {
    std::vector<std::int64_t> sizes(num_groups, 0);
    for (const auto g : groups) ++sizes[g];
    return sizes;
}

const std::string& Partition::label_of(std::uint32_t group) const {
    static const std::string empty;
    if (group < labels.size()) return labels[group];
    return empty;
}

void Partition::canonicalize() {
    const auto sizes = group_sizes();
    std::vector<std::string> min_member(num_groups);
    for (std::size_t i = 0; i < users.size(); ++i) {
        auto& m = min_member[groups[i]];
        if (m.empty() || users[i] < m) m = users[i];
    }
    std::vector<std::uint32_t> order(num_groups);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
        return min_member[a] < min_member[b];
    });
    std::vector<std::uint32_t> rank(num_groups);
    for (std::uint32_t i = 0; i < num_groups; ++i) rank[order[i]] = i;
    for (auto& g : groups) g = rank[g];
    if (!labels.empty()) {
        std::vector<std::string> relabeled(num_groups);
        for (std::uint32_t g = 0; g < num_groups; ++g) relabeled[rank[g]] = labels[g];
        labels = std::move(relabeled);
    }
}

Partition make_partition(std::vector<std::pair<std::string, std::uint32_t>> assignment,
                         std::uint32_t num_groups) {
    std::sort(assignment.begin(), assignment.end());
    Partition p;
    p.num_groups = num_groups;
    p.users.reserve(assignment.size());
    p.groups.reserve(assignment.size());
    for (auto& [user, group] : assignment) {
        if (group >= num_groups)
            throw DataError("group index " + std::to_string(group) + " out of range");
        if (!p.users.empty() && p.users.back() == user)
            throw DataError("duplicate user in partition: " + user);
        p.users.push_back(std::move(user));
        p.groups.push_back(group);
    }
    return p;
}

void write_partition_csv(const std::string& path, const Partition& p,
                         std::uint64_t seed, const std::string& objective_tag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write partition file: " + path);
    csv::Writer w(out);
    std::ostringstream head;
    head << "b=" << p.num_groups << " score=" << csv::format_double(p.score)
         << " seed=" << seed << " objective=" << objective_tag;
    w.comment(head.str());
    w.row({"user_id", "group_index", "label"});
    for (std::size_t i = 0; i < p.users.size(); ++i)
        w.row({p.users[i], csv::format_int(p.groups[i]), p.label_of(p.groups[i])});
}

Partition read_partition_csv(const std::string& path, PartitionFileMeta* meta) {
    const csv::Table t = csv::read_file(path);
    const auto uc = t.column("user_id");
    const auto gc = t.column("group_index");
    const auto lc = t.column("label");
    if (!uc || !gc) throw DataError(path + ": not a partition file (missing columns)");

    PartitionFileMeta m;
    for (const auto& c : t.comments) {
        std::istringstream in(c);
        std::string tok;
        while (in >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            try {
                if (key == "b") m.num_groups = static_cast<std::uint32_t>(std::stoul(val));
                else if (key == "score") m.score = std::stod(val);
                else if (key == "seed") m.seed = std::stoull(val);
                else if (key == "objective") m.objective = val;
            } catch (...) {
                throw DataError(path + ": bad header field: " + tok);
            }
        }
    }

    std::vector<std::pair<std::string, std::uint32_t>> assignment;
    std::uint32_t max_group = 0;
    std::vector<std::pair<std::uint32_t, std::string>> labels;
    for (const auto& row : t.rows) {
        std::uint32_t g;
        try {
            g = static_cast<std::uint32_t>(std::stoul(row[*gc]));
        } catch (...) {
            throw DataError(path + ": bad group index: " + row[*gc]);
        }
        max_group = std::max(max_group, g);
        assignment.emplace_back(row[*uc], g);
        if (lc && !row[*lc].empty()) labels.emplace_back(g, row[*lc]);
    }
    const std::uint32_t b = std::max(m.num_groups, max_group + 1);
    Partition p = make_partition(std::move(assignment), b);
    p.score = m.score;
    if (!labels.empty()) {
        p.labels.assign(b, "");
        for (auto& [g, label] : labels) p.labels[g] = label;
    }
    if (meta) {
        m.num_groups = b;
        *meta = m;
    }
    return p;
}

} // namespace polarscope
