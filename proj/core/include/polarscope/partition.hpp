#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarscope {

/// Assignment of user ids to group indices in [0, num_groups).
/// Users are kept sorted; `groups` is parallel to `users`.
struct Partition {
    std::vector<std::string> users;
    std::vector<std::uint32_t> groups;
    std::uint32_t num_groups = 1;
    std::vector<std::string> labels; // empty, or one label per group (unique)
    double score = 0.0;              // model objective value, nats

    std::optional<std::uint32_t> group_of(std::string_view user) const;
    std::vector<std::int64_t> group_sizes() const;
    std::size_t size() const { return users.size(); }

    const std::string& label_of(std::uint32_t group) const;

    /// Renumber groups canonically: by size descending, then by smallest
    /// member id ascending. Labels (if any) are permuted along.
    void canonicalize();
};

/// Build a partition from (user, group) pairs; validates group indices
/// and duplicate users.
Partition make_partition(std::vector<std::pair<std::string, std::uint32_t>> assignment,
                         std::uint32_t num_groups);

struct PartitionFileMeta {
    std::uint32_t num_groups = 1;
    double score = 0.0;
    std::uint64_t seed = 0;
    std::string objective; // objective version tag
};

/// Partition CSV: "# b=... score=... seed=... objective=..." comment
/// header, then user_id,group_index,label rows.
void write_partition_csv(const std::string& path, const Partition& p,
                         std::uint64_t seed, const std::string& objective_tag);
Partition read_partition_csv(const std::string& path, PartitionFileMeta* meta = nullptr);

} // namespace polarscope
