#include "mackeycoh/serialize.hpp"

#include <limits>

#include "mackeycoh/error.hpp"

namespace mackeycoh {

namespace {

Json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v < lo || v > hi) return Json(v.str());
    return Json(v.convert_to<std::int64_t>());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::runtime_error&) {
            throw ParseError("json: not a decimal integer: " + j.dump());
        }
    }
    throw ParseError("json: expected integer, got " + j.dump());
}

Json mat_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// The shape is not stored: both dimensions are determined by the adjacent
// levels, which is what makes the plain nested-array form unambiguous.
Mat mat_from_json(const Json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError("json: matrix row count mismatch");
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("json: matrix column count mismatch");
        for (int c = 0; c < cols; ++c) m(i, c) = int_from_json(row.at(c));
    }
    return m;
}

Json group_to_json(const FgAbGroup& g) {
    Json tor = Json::array();
    for (const Int& d : g.torsion()) tor.push_back(int_to_json(d));
    return Json{{"rank", g.rank()}, {"torsion", std::move(tor)}};
}

FgAbGroup group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("torsion"))
        throw ParseError("json: level must have rank/torsion");
    std::vector<Int> tor;
    for (const Json& d : j.at("torsion")) tor.push_back(int_from_json(d));
    return FgAbGroup(j.at("rank").get<int>(), std::move(tor));
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("json: missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json functor_to_json(const MackeyFunctor& m) {
    Json levels = Json::array();
    for (int k = 0; k <= m.n(); ++k) levels.push_back(group_to_json(m.level(k)));
    Json res = Json::array();
    Json tr = Json::array();
    for (int k = 1; k <= m.n(); ++k) {
        res.push_back(mat_to_json(m.res(k).mat()));
        tr.push_back(mat_to_json(m.tr(k).mat()));
    }
    return Json{{"p", m.p()},
                {"n", m.n()},
                {"levels", std::move(levels)},
                {"res", std::move(res)},
                {"tr", std::move(tr)}};
}

MackeyFunctor functor_from_json(const Json& j) {
    const long long p = int_from_json(require(j, "p")).convert_to<long long>();
    const int n = require(j, "n").get<int>();
    std::vector<FgAbGroup> levels;
    for (const Json& l : require(j, "levels")) levels.push_back(group_from_json(l));
    if (static_cast<int>(levels.size()) != n + 1)
        throw ParseError("json: expected n+1 levels");
    const Json& jres = require(j, "res");
    const Json& jtr = require(j, "tr");
    if (static_cast<int>(jres.size()) != n || static_cast<int>(jtr.size()) != n)
        throw ParseError("json: expected n res and tr matrices");
    std::vector<GroupHom> res, tr;
    for (int k = 1; k <= n; ++k) {
        res.emplace_back(
            levels[k], levels[k - 1],
            mat_from_json(jres.at(k - 1), levels[k - 1].ngens(), levels[k].ngens()));
        tr.emplace_back(
            levels[k - 1], levels[k],
            mat_from_json(jtr.at(k - 1), levels[k].ngens(), levels[k - 1].ngens()));
    }
    return MackeyFunctor(p, n, std::move(levels), std::move(res), std::move(tr));
}

Json grading_to_json(const Grading& g) {
    Json a = Json::array();
    for (long long v : g.a) a.push_back(v);
    return Json{{"n", g.n}, {"c", g.c}, {"a", std::move(a)}};
}

Grading grading_from_json(const Json& j) {
    std::vector<long long> a;
    for (const Json& v : require(j, "a")) a.push_back(v.get<long long>());
    return Grading(require(j, "n").get<int>(),
                   require(j, "c").get<long long>(), std::move(a));
}

ResultRecord make_record(long long p, int n, const Grading& g,
                         const CohomResult& r) {
    ResultRecord rec;
    rec.p = p;
    rec.n = n;
    rec.grading = g.render();
    rec.value = r.functor;
    rec.reason = r.reason;
    rec.trace = r.trace;
    rec.version = engine_version();
    return rec;
}

Json record_to_json(const ResultRecord& r) {
    Json trace = Json::array();
    for (const TraceEntry& t : r.trace)
        trace.push_back(Json{{"rule", t.rule},
                             {"paper_ref", t.paper_ref},
                             {"subquery", t.subquery}});
    Json out{{"p", r.p},
             {"n", r.n},
             {"grading", r.grading},
             {"trace", std::move(trace)},
             {"version", r.version}};
    if (r.value) {
        out["value"] = functor_to_json(*r.value);
    } else {
        out["value"] = "unknown";
        out["reason"] = r.reason;
    }
    return out;
}

ResultRecord record_from_json(const Json& j) {
    ResultRecord r;
    r.p = int_from_json(require(j, "p")).convert_to<long long>();
    r.n = require(j, "n").get<int>();
    r.grading = require(j, "grading").get<std::string>();
    const Json& value = require(j, "value");
    if (value.is_string()) {
        if (value.get<std::string>() != "unknown")
            throw ParseError("json: value must be a diagram or \"unknown\"");
        if (j.contains("reason")) r.reason = j.at("reason").get<std::string>();
    } else {
        r.value = functor_from_json(value);
    }
    for (const Json& t : require(j, "trace"))
        r.trace.push_back(TraceEntry{require(t, "rule").get<std::string>(),
                                     require(t, "paper_ref").get<std::string>(),
                                     require(t, "subquery").get<std::string>()});
    r.version = require(j, "version").get<std::string>();
    return r;
}

}  // namespace mackeycoh
