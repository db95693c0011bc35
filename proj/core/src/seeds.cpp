#include "polarscope/seeds.hpp"

#include <algorithm>
#include <fstream>

#include "polarscope/csvio.hpp"
#include "polarscope/errors.hpp"

namespace polarscope::seeds {

const char* to_string(Bloc b) {
    switch (b) {
        case Bloc::ConservativeRight: return "ConservativeRight";
        case Bloc::LiberalLeft: return "LiberalLeft";
        case Bloc::ModerateRight: return "ModerateRight";
        case Bloc::Minor: return "Minor";
    }
    return "Minor";
}

std::optional<Bloc> bloc_from_string(std::string_view s) {
    if (s == "ConservativeRight") return Bloc::ConservativeRight;
    if (s == "LiberalLeft") return Bloc::LiberalLeft;
    if (s == "ModerateRight") return Bloc::ModerateRight;
    if (s == "Minor") return Bloc::Minor;
    return std::nullopt;
}

const char* display_label(Bloc b) {
    switch (b) {
        case Bloc::ConservativeRight: return "Conservative Right";
        case Bloc::LiberalLeft: return "Liberal Left";
        case Bloc::ModerateRight: return "Moderate Right";
        case Bloc::Minor: return "Minor";
    }
    return "Minor";
}

std::vector<SeedAccount> load_seed_accounts(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const auto hc = t.column("handle");
    const auto ac = t.column("author_id");
    const auto pc = t.column("party");
    const auto bc = t.column("bloc");
    const auto yc = t.column("election_year");
    if (!hc || !ac || !pc || !bc || !yc)
        throw ConfigError(path +
                          ": seed file needs columns handle, author_id, party, bloc, "
                          "election_year");
    std::vector<SeedAccount> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        SeedAccount s;
        s.handle = row[*hc];
        s.author_id = row[*ac];
        s.party = row[*pc];
        const auto b = bloc_from_string(row[*bc]);
        if (!b)
            throw ConfigError(path + ": row " + std::to_string(i + 2) +
                              ": unknown bloc '" + row[*bc] + "'");
        s.bloc = *b;
        try {
            s.election_year = std::stoi(row[*yc]);
        } catch (...) {
            throw ConfigError(path + ": row " + std::to_string(i + 2) +
                              ": bad election_year '" + row[*yc] + "'");
        }
        if (s.election_year != 2019 && s.election_year != 2023)
            throw ConfigError(path + ": row " + std::to_string(i + 2) +
                              ": election_year must be 2019 or 2023");
        if (s.author_id.empty())
            throw ConfigError(path + ": row " + std::to_string(i + 2) + ": empty author_id");
        out.push_back(std::move(s));
    }
    return out;
}

void write_seed_accounts(const std::string& path, const std::vector<SeedAccount>& seeds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write seed file: " + path);
    csv::Writer w(out);
    w.row({"handle", "author_id", "party", "bloc", "election_year"});
    for (const auto& s : seeds)
        w.row({s.handle, s.author_id, s.party, to_string(s.bloc),
               csv::format_int(s.election_year)});
}

std::vector<std::string> seed_author_ids(const std::vector<SeedAccount>& seeds,
                                         std::optional<int> election_year) {
    std::vector<std::string> out;
    for (const auto& s : seeds)
        if (!election_year || s.election_year == *election_year) out.push_back(s.author_id);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace polarscope::seeds
