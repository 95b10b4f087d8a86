#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mackeycoh/serialize.hpp"

namespace mackeycoh {

// Default store location when no directory is given on the command line.
inline constexpr const char* kStoreEnvVar = "MACKEYCOH_STORE";

// Filename-safe encoding of a normalized grading text: '+' -> 'p',
// '-' -> 'm', '*' -> 'x', spaces dropped.  Injective on render() output,
// whose alphabet is digits, 'L' and those three symbols.
std::string encode_grading_key(const std::string& grading_text);

// Directory of one JSON file per key, named p{p}_n{n}_{enc}.json.
// Write-once: saving a record that differs from the stored one under the
// same engine version throws StoreConflict; a changed version may replace.
// Writes go through a temp file and an atomic rename.
class ResultStore {
public:
    explicit ResultStore(std::filesystem::path dir);

    static std::optional<ResultStore> from_env();

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(long long p, int n,
                                   const std::string& grading_text) const;

    std::optional<ResultRecord> load(long long p, int n,
                                     const std::string& grading_text) const;
    // Returns true when the file was (re)written, false on an idempotent hit.
    bool save(const ResultRecord& rec);

private:
    std::filesystem::path dir_;
};

}  // namespace mackeycoh
