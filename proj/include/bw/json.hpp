#pragma once

// JSON encodings: sequences ("bw-seq/1") and equivalence verdicts.
// Counts and coefficients travel as decimal strings so nothing is limited to 64 bits.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bw/arith.hpp"
#include "bw/equivalence.hpp"
#include "bw/error.hpp"
#include "bw/sequence.hpp"

namespace bw {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSequenceSchema = "bw-seq/1";

namespace detail {

inline BigInt big_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) throw schema_error(where + ": expected a decimal string");
    return parse_decimal(j.get<std::string>());
}

// Bases are small integers in practice; accept a JSON integer or a decimal string.
inline BigInt base_from_json(const Json& j, const std::string& where) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw schema_error(where + ": base must be positive");
        return BigInt(v);
    }
    if (j.is_string()) return parse_decimal(j.get<std::string>());
    throw schema_error(where + ": expected an integer");
}

inline Json base_to_json(const BigInt& b) {
    if (auto v = to_u64(b)) return Json(*v);
    return Json(b.str());
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw schema_error(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw schema_error(where + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace detail

inline Json to_json(const Sequence& seq) {
    Json j;
    j["schema"] = kSequenceSchema;
    Json prefix = Json::array();
    for (const auto& v : seq.prefix()) prefix.push_back(v.str());
    j["prefix"] = std::move(prefix);
    Json tail;
    if (const auto* p = std::get_if<PeriodicTail>(&seq.tail())) {
        tail["kind"] = "periodic";
        Json values = Json::array();
        for (const auto& v : p->values) values.push_back(v.str());
        tail["values"] = std::move(values);
    } else {
        tail["kind"] = "expsum";
        Json terms = Json::array();
        for (const auto& t : std::get<ExpSumTail>(seq.tail()).terms) {
            Json term;
            term["coeff"] = t.coeff.str();
            term["base"] = detail::base_to_json(t.base);
            terms.push_back(std::move(term));
        }
        tail["terms"] = std::move(terms);
    }
    j["tail"] = std::move(tail);
    return j;
}

inline Sequence sequence_from_json(const Json& j) {
    const auto& schema = detail::require(j, "schema", "sequence");
    if (!schema.is_string() || schema.get<std::string>() != kSequenceSchema) {
        throw schema_error(std::string("sequence: unsupported schema ") + schema.dump() + ", expected \"" + kSequenceSchema + "\"");
    }
    std::vector<BigInt> prefix;
    if (auto it = j.find("prefix"); it != j.end()) {
        if (!it->is_array()) throw schema_error("sequence.prefix: expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) prefix.push_back(detail::big_from_json((*it)[i], "sequence.prefix[" + std::to_string(i) + "]"));
    }
    const auto& tail = detail::require(j, "tail", "sequence");
    const auto& kind = detail::require(tail, "kind", "sequence.tail");
    if (!kind.is_string()) throw schema_error("sequence.tail.kind: expected a string");
    const auto k = kind.get<std::string>();
    if (k == "periodic") {
        const auto& values = detail::require(tail, "values", "sequence.tail");
        if (!values.is_array()) throw schema_error("sequence.tail.values: expected an array");
        std::vector<BigInt> cycle;
        for (std::size_t i = 0; i < values.size(); ++i) cycle.push_back(detail::big_from_json(values[i], "sequence.tail.values[" + std::to_string(i) + "]"));
        return Sequence::periodic(std::move(prefix), std::move(cycle));
    }
    if (k == "expsum") {
        const auto& terms = detail::require(tail, "terms", "sequence.tail");
        if (!terms.is_array()) throw schema_error("sequence.tail.terms: expected an array");
        std::vector<ExpTerm> out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string where = "sequence.tail.terms[" + std::to_string(i) + "]";
            out.push_back(ExpTerm{detail::big_from_json(detail::require(terms[i], "coeff", where), where + ".coeff"),
                                  detail::base_from_json(detail::require(terms[i], "base", where), where + ".base")});
        }
        return Sequence::exp_sum(std::move(prefix), std::move(out));
    }
    throw schema_error("sequence.tail.kind: unknown kind \"" + k + "\"");
}

inline Sequence parse_sequence(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw schema_error(std::string("malformed JSON: ") + e.what());
    }
    return sequence_from_json(j);
}

inline std::string serialize(const Sequence& seq) { return to_json(seq).dump(2) + "\n"; }

inline Sequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failed: " + path);
    try {
        return parse_sequence(buf.str());
    } catch (const schema_error& e) {
        throw schema_error(path + ": " + e.what());
    }
}

inline void save_sequence(const Sequence& seq, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << serialize(seq);
    if (!out) throw io_error("write failed: " + path);
}

inline Json big_to_json_number(const BigInt& v) {
    if (auto u = to_u64(v)) return Json(*u);
    return Json(v.str());
}

inline Json to_json(const EquivalenceVerdict& v) {
    Json j;
    if (const auto* e = std::get_if<Equivalent>(&v)) {
        j["verdict"] = "equivalent";
        j["p"] = big_to_json_number(e->p);
        j["q"] = big_to_json_number(e->q);
    } else {
        j["verdict"] = "inequivalent";
        j["reason"] = to_string(std::get<Inequivalent>(v).reason);
    }
    return j;
}

}  // namespace bw
