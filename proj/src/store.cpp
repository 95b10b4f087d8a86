#include "mackeycoh/store.hpp"

#include <cstdlib>
#include <fstream>

#include "mackeycoh/error.hpp"

namespace mackeycoh {

namespace fs = std::filesystem;

std::string encode_grading_key(const std::string& grading_text) {
    std::string out;
    for (char c : grading_text) {
        switch (c) {
            case ' ': break;
            case '+': out += 'p'; break;
            case '-': out += 'm'; break;
            case '*': out += 'x'; break;
            default: out += c;
        }
    }
    return out;
}

ResultStore::ResultStore(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw StoreConflict("store: cannot create directory " + dir_.string());
}

std::optional<ResultStore> ResultStore::from_env() {
    const char* v = std::getenv(kStoreEnvVar);
    if (!v || !*v) return std::nullopt;
    return ResultStore(fs::path(v));
}

fs::path ResultStore::path_for(long long p, int n,
                               const std::string& grading_text) const {
    return dir_ / ("p" + std::to_string(p) + "_n" + std::to_string(n) + "_" +
                   encode_grading_key(grading_text) + ".json");
}

std::optional<ResultRecord> ResultStore::load(
    long long p, int n, const std::string& grading_text) const {
    const fs::path path = path_for(p, n, grading_text);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("store: " + path.string() + ": " + e.what());
    }
    return record_from_json(j);
}

bool ResultStore::save(const ResultRecord& rec) {
    const fs::path path = path_for(rec.p, rec.n, rec.grading);
    if (const auto existing = load(rec.p, rec.n, rec.grading)) {
        if (*existing == rec) return false;
        if (existing->version == rec.version)
            throw StoreConflict("store: " + path.string() +
                                " already holds a different result under "
                                "version " + rec.version);
        // A new rule table may legitimately replace the old value.
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw StoreConflict("store: cannot write " + tmp.string());
        out << record_to_json(rec).dump(2) << "\n";
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw StoreConflict("store: rename failed for " + path.string());
    }
    return true;
}

}  // namespace mackeycoh
