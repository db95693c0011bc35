#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarscope::seeds {

enum class Bloc { ConservativeRight, LiberalLeft, ModerateRight, Minor };

const char* to_string(Bloc b);
std::optional<Bloc> bloc_from_string(std::string_view s);

/// Display label used for group labelling ("Conservative Right" etc.).
const char* display_label(Bloc b);

struct SeedAccount {
    std::string handle;
    std::string author_id;
    std::string party;
    Bloc bloc = Bloc::Minor;
    int election_year = 0; // 2019 or 2023
};

/// Seed-account CSV: columns handle, author_id, party, bloc, election_year.
std::vector<SeedAccount> load_seed_accounts(const std::string& path);
void write_seed_accounts(const std::string& path, const std::vector<SeedAccount>& seeds);

/// Sorted author ids, optionally restricted to one election year.
std::vector<std::string> seed_author_ids(const std::vector<SeedAccount>& seeds,
                                         std::optional<int> election_year = std::nullopt);

} // namespace polarscope::seeds
