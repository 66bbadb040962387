#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "mstream/instance.hpp"
#include "mstream/oracles.hpp"
#include "mstream/streaming.hpp"
#include "mstream/submodular.hpp"

namespace mstream {

// Parses an instance file (UTF-8 JSON). Schema:
//   {"meta": {"name": str, "notes": str},
//    "elements": [{"id": str, "weight": "decimal"}, ...],
//    "matroids": [{"type": "partition", "blocks": [[ids]...], "capacities": [ints]}
//               | {"type": "uniform", "k": int}
//               | {"type": "graphic", "vertices": int, "edges": {id: [u, v], ...}}],
//    "objective": {"type": "linear"}
//              | {"type": "coverage", "sets": {id: [items]}, "item_weights": {item: "dec"}}
//              | {"type": "cut", "vertices": int, "toggles": {id: [v...]},
//                 "edge_weights": [[u, v, "dec"], ...]},
//    "stream_order": [ids]}          // optional
// Weights are exact decimal strings. Errors carry the JSON-pointer path of
// the offending value.
Instance parse_instance(const std::string& bytes);
Instance load_instance(const std::string& path);

// Canonical re-emission: weights as decimals, keys sorted, 2-space indent.
// parse(emit(parse(x))) == parse(x).
std::string emit_instance(const Instance& inst);

// "file" (stream_order or element order), "reverse", or "shuffle:<seed>".
std::vector<ElementIndex> resolve_order(const Instance& inst, const std::string& mode);

struct RunReport {
    std::string algo;  // exact | streaming | streaming_k | submodular
    std::string fixture;
    StreamReport stream;
    Rat alpha = Rat(1);
    std::optional<Rat> y = std::nullopt;
    std::optional<Rat> epsilon = std::nullopt;
    std::optional<Rat> q = std::nullopt;
    std::optional<Rat> delta = std::nullopt;
    std::uint64_t seed = 0;
    bool deterministic = true;
    std::optional<Rat> opt_weight = std::nullopt;
    std::int64_t wall_ms = 0;
};

// The algorithmic payload of a report: everything except run metadata.
// Degenerate parameter choices that must coincide (exact vs streaming at
// alpha = 1, y = inf; linear submodular at q = 1 vs streaming) produce
// byte-identical payloads.
nlohmann::json stream_report_json(const Instance& inst, const StreamReport& report);

// Full canonical report. Byte-identical for identical
// (instance, order, params, seed) once wall_ms is fixed.
std::string emit_report(const Instance& inst, const RunReport& report);

}  // namespace mstream
