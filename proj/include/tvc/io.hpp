#pragma once

#include "tvc/engine.hpp"
#include "tvc/matrix.hpp"
#include "tvc/transversal.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <string>

namespace tvc {

inline constexpr const char* kEngineVersion = "tvc-0.1.0";

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Json ring_to_json(const Ring& r) {
    switch (r.kind()) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::IntegersMod: return Json{{"Zmod", static_cast<long long>(r.modulus())}};
        case RingKind::PrimeField: return Json{{"GF", static_cast<long long>(r.modulus())}};
    }
    throw std::logic_error("ring_to_json: unhandled kind");
}

inline Ring ring_from_json(const Json& j) {
    try {
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            if (s == "Z") return Ring::integers();
            if (s == "Q") return Ring::rationals();
            throw ParseError("unknown ring \"" + s + "\"");
        }
        if (j.is_object() && j.size() == 1) {
            if (j.contains("Zmod")) return Ring::integers_mod(Int(j["Zmod"].get<long long>()));
            if (j.contains("GF")) return Ring::prime_field(Int(j["GF"].get<long long>()));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid ring: ") + e.what());
    }
    throw ParseError("invalid ring descriptor: " + j.dump());
}

inline Json elem_to_json(const RingElem& e) {
    const Int num = numerator(e.value());
    const Int den = denominator(e.value());
    if (den != 1) return num.str() + "/" + den.str();
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
        return static_cast<long long>(num);
    return num.str();
}

inline RingElem elem_from_json(const Ring& ring, const Json& j) {
    try {
        if (j.is_number_integer()) return RingElem(ring, Int(j.get<long long>()));
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            auto slash = s.find('/');
            if (slash == std::string::npos) return RingElem(ring, Int(s));
            return RingElem(ring, Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1))));
        }
    } catch (const std::exception& e) {
        throw ParseError("invalid matrix entry " + j.dump() + ": " + e.what());
    }
    throw ParseError("invalid matrix entry: " + j.dump());
}

struct GeneratorStamp {
    std::string rng;
    std::uint64_t seed = 0;
};

/// A matrix plus its column partition, as exchanged through files. Rows
/// and columns are implicitly indexed 1..p and 1..q.
struct Instance {
    IndexedMatrix matrix;
    ColumnPartition partition;
    std::optional<GeneratorStamp> generator;
};

inline Json instance_to_json(const Instance& inst) {
    const IndexedMatrix& m = inst.matrix;
    if (!(m.rows() == IndexSet::range(1, m.row_count())) ||
        !(m.cols() == IndexSet::range(1, m.col_count())))
        throw std::invalid_argument("instance_to_json: index sets must be 1..p and 1..q");
    Json j;
    j["ring"] = ring_to_json(m.ring());
    Json rows = Json::array();
    for (int r : m.rows()) {
        Json row = Json::array();
        for (int c : m.cols()) row.push_back(elem_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    Json blocks = Json::array();
    for (const IndexSet& b : inst.partition.blocks()) {
        Json block = Json::array();
        for (int c : b) block.push_back(c);
        blocks.push_back(std::move(block));
    }
    j["partition"] = std::move(blocks);
    if (inst.generator) {
        j["generator"] = Json{{"rng", inst.generator->rng},
                              {"seed", inst.generator->seed}};
    }
    return j;
}

inline Instance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("rows") || !j.contains("partition"))
        throw ParseError("instance must have ring, rows and partition fields");
    Ring ring = ring_from_json(j["ring"]);
    const Json& rows = j["rows"];
    if (!rows.is_array() || rows.empty()) throw ParseError("rows must be a nonempty array");
    const int p = static_cast<int>(rows.size());
    if (!rows[0].is_array() || rows[0].empty())
        throw ParseError("rows must contain nonempty arrays");
    const int q = static_cast<int>(rows[0].size());
    IndexedMatrix m(ring, IndexSet::range(1, p), IndexSet::range(1, q));
    for (int r = 0; r < p; ++r) {
        if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != q)
            throw ParseError("matrix is not rectangular at row " + std::to_string(r + 1));
        for (int c = 0; c < q; ++c) m.set(r + 1, c + 1, elem_from_json(ring, rows[r][c]));
    }
    const Json& bj = j["partition"];
    if (!bj.is_array() || bj.empty()) throw ParseError("partition must be a nonempty array");
    std::vector<IndexSet> blocks;
    try {
        for (const Json& block : bj) {
            if (!block.is_array()) throw ParseError("partition blocks must be arrays");
            std::vector<int> cols;
            for (const Json& c : block) cols.push_back(c.get<int>());
            blocks.emplace_back(std::move(cols));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid partition: ") + e.what());
    }
    std::optional<ColumnPartition> part;
    try {
        part.emplace(std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid partition: ") + e.what());
    }
    if (!part->partitions(m.cols()))
        throw ParseError("partition does not cover columns 1.." + std::to_string(q));
    std::optional<GeneratorStamp> stamp;
    if (j.contains("generator")) {
        const Json& g = j["generator"];
        stamp = GeneratorStamp{g.value("rng", std::string()), g.value("seed", std::uint64_t(0))};
    }
    return {std::move(m), std::move(*part), std::move(stamp)};
}

inline Json certificate_to_json(const TheoremCertificate& cert) {
    Json j;
    Json rows = Json::array();
    for (int r : cert.Q.rows()) {
        Json row = Json::array();
        for (int c : cert.Q.cols()) row.push_back(elem_to_json(cert.Q.at(r, c)));
        rows.push_back(std::move(row));
    }
    j["Q"] = std::move(rows);
    j["m"] = cert.m;
    Json aprime = Json::array();
    for (int r : cert.rows_aprime) aprime.push_back(r);
    j["rowsAprime"] = std::move(aprime);
    j["possiblyBadBlocks"] = cert.possibly_bad_blocks;
    j["branch"] = branch_name(cert.branch);
    j["engineVersion"] = kEngineVersion;
    return j;
}

/// The ring and row set come from the instance the certificate refers to;
/// audit data is not part of the file format.
inline TheoremCertificate certificate_from_json(const Json& j, const Ring& ring,
                                                const IndexSet& rows) {
    if (!j.is_object() || !j.contains("Q") || !j.contains("m") || !j.contains("rowsAprime") ||
        !j.contains("branch"))
        throw ParseError("certificate must have Q, m, rowsAprime and branch fields");
    const Json& qj = j["Q"];
    const int p = rows.size();
    if (!qj.is_array() || static_cast<int>(qj.size()) != p)
        throw ParseError("certificate Q must be a " + std::to_string(p) + "-row matrix");
    IndexedMatrix q(ring, rows, rows);
    for (int r = 0; r < p; ++r) {
        if (!qj[r].is_array() || static_cast<int>(qj[r].size()) != p)
            throw ParseError("certificate Q is not square");
        for (int c = 0; c < p; ++c)
            q.set(rows.at(r), rows.at(c), elem_from_json(ring, qj[r][c]));
    }
    std::vector<int> aprime;
    for (const Json& r : j["rowsAprime"]) aprime.push_back(r.get<int>());
    TheoremCertificate cert{std::move(q), IndexSet(std::move(aprime)), j["m"].get<int>(),
                            j.value("possiblyBadBlocks", std::vector<int>{}),
                            branch_from_name(j["branch"].get<std::string>()), {}};
    return cert;
}

/// Canonical text form; all golden files and byte-for-byte determinism
/// checks go through this.
inline std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace tvc
