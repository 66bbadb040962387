#include "mstream/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "mstream/errors.hpp"
#include "mstream/rng.hpp"

namespace mstream {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw InputError("parse error at " + (path.empty() ? "/" : path) + ": " + message);
}

const json& expect(const json& j, const std::string& path, json::value_t type,
                   const char* what) {
    if (j.type() != type) fail(path, std::string("expected ") + what);
    return j;
}

std::string get_string(const json& j, const std::string& path) {
    expect(j, path, json::value_t::string, "a string");
    return j.get<std::string>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

Rat get_weight(const json& j, const std::string& path) {
    std::string text = get_string(j, path);
    try {
        return parse_decimal(text);
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

struct IdTable {
    std::map<std::string, ElementIndex> index;

    ElementIndex resolve(const std::string& id, const std::string& path) const {
        auto it = index.find(id);
        if (it == index.end()) fail(path, "unknown element id '" + id + "'");
        return it->second;
    }
};

MatroidDescriptor parse_matroid(const json& j, const std::string& path,
                                const IdTable& ids, std::size_t n) {
    expect(j, path, json::value_t::object, "an object");
    std::string type = get_string(j.value("type", json()), path + "/type");
    if (type == "partition") {
        if (!j.contains("blocks") || !j.contains("capacities")) {
            fail(path, "partition matroid needs blocks and capacities");
        }
        const json& jb = expect(j["blocks"], path + "/blocks", json::value_t::array, "an array");
        const json& jc =
            expect(j["capacities"], path + "/capacities", json::value_t::array, "an array");
        std::vector<ElementSet> blocks;
        for (std::size_t b = 0; b < jb.size(); ++b) {
            std::string bpath = path + "/blocks/" + std::to_string(b);
            expect(jb[b], bpath, json::value_t::array, "an array");
            ElementSet block;
            for (std::size_t i = 0; i < jb[b].size(); ++i) {
                block.push_back(ids.resolve(
                    get_string(jb[b][i], bpath + "/" + std::to_string(i)),
                    bpath + "/" + std::to_string(i)));
            }
            std::sort(block.begin(), block.end());
            blocks.push_back(std::move(block));
        }
        std::vector<std::uint32_t> caps;
        for (std::size_t c = 0; c < jc.size(); ++c) {
            caps.push_back(static_cast<std::uint32_t>(
                get_uint(jc[c], path + "/capacities/" + std::to_string(c))));
        }
        try {
            return MatroidDescriptor::partition(n, blocks, caps);
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
    if (type == "uniform") {
        if (!j.contains("k")) fail(path, "uniform matroid needs k");
        return MatroidDescriptor::uniform(
            n, static_cast<std::uint32_t>(get_uint(j["k"], path + "/k")));
    }
    if (type == "graphic") {
        if (!j.contains("vertices") || !j.contains("edges")) {
            fail(path, "graphic matroid needs vertices and edges");
        }
        auto vertices = static_cast<std::uint32_t>(get_uint(j["vertices"], path + "/vertices"));
        const json& je = expect(j["edges"], path + "/edges", json::value_t::object, "an object");
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(n, {0, 0});
        std::vector<char> seen(n, 0);
        for (auto it = je.begin(); it != je.end(); ++it) {
            std::string epath = path + "/edges/" + it.key();
            ElementIndex e = ids.resolve(it.key(), epath);
            const json& pair = expect(it.value(), epath, json::value_t::array, "an array");
            if (pair.size() != 2) fail(epath, "expected an endpoint pair");
            auto u = static_cast<std::uint32_t>(get_uint(pair[0], epath + "/0"));
            auto v = static_cast<std::uint32_t>(get_uint(pair[1], epath + "/1"));
            if (u >= vertices || v >= vertices) fail(epath, "endpoint out of range");
            edges[e] = {u, v};
            seen[e] = 1;
        }
        for (std::size_t e = 0; e < n; ++e) {
            if (!seen[e]) fail(path + "/edges", "element missing from the edge map");
        }
        return MatroidDescriptor::graphic(n, vertices, edges);
    }
    fail(path + "/type", "unknown matroid type '" + type + "'");
}

Objective parse_objective(const json& j, const std::string& path, const IdTable& ids,
                          std::size_t n) {
    expect(j, path, json::value_t::object, "an object");
    std::string type = get_string(j.value("type", json()), path + "/type");
    if (type == "linear") return make_linear_objective();
    if (type == "coverage") {
        if (!j.contains("sets") || !j.contains("item_weights")) {
            fail(path, "coverage objective needs sets and item_weights");
        }
        const json& jw = expect(j["item_weights"], path + "/item_weights",
                                json::value_t::object, "an object");
        CoverageObjective cov;
        std::map<std::string, std::uint32_t> item_index;
        for (auto it = jw.begin(); it != jw.end(); ++it) {
            item_index[it.key()] = static_cast<std::uint32_t>(cov.item_names.size());
            cov.item_names.push_back(it.key());
            cov.item_weights.push_back(
                get_weight(it.value(), path + "/item_weights/" + it.key()));
        }
        cov.sets.assign(n, {});
        const json& js = expect(j["sets"], path + "/sets", json::value_t::object, "an object");
        for (auto it = js.begin(); it != js.end(); ++it) {
            std::string spath = path + "/sets/" + it.key();
            ElementIndex e = ids.resolve(it.key(), spath);
            const json& items = expect(it.value(), spath, json::value_t::array, "an array");
            for (std::size_t i = 0; i < items.size(); ++i) {
                std::string item = get_string(items[i], spath + "/" + std::to_string(i));
                auto found = item_index.find(item);
                if (found == item_index.end()) {
                    fail(spath + "/" + std::to_string(i), "item '" + item + "' has no weight");
                }
                cov.sets[e].push_back(found->second);
            }
            std::sort(cov.sets[e].begin(), cov.sets[e].end());
            cov.sets[e].erase(std::unique(cov.sets[e].begin(), cov.sets[e].end()),
                              cov.sets[e].end());
        }
        return make_coverage_objective(std::move(cov));
    }
    if (type == "cut") {
        if (!j.contains("vertices") || !j.contains("toggles") || !j.contains("edge_weights")) {
            fail(path, "cut objective needs vertices, toggles and edge_weights");
        }
        GraphCutObjective cut;
        cut.vertex_count = static_cast<std::uint32_t>(get_uint(j["vertices"], path + "/vertices"));
        cut.toggles.assign(n, {});
        const json& jt =
            expect(j["toggles"], path + "/toggles", json::value_t::object, "an object");
        for (auto it = jt.begin(); it != jt.end(); ++it) {
            std::string tpath = path + "/toggles/" + it.key();
            ElementIndex e = ids.resolve(it.key(), tpath);
            const json& verts = expect(it.value(), tpath, json::value_t::array, "an array");
            for (std::size_t i = 0; i < verts.size(); ++i) {
                auto v = static_cast<std::uint32_t>(
                    get_uint(verts[i], tpath + "/" + std::to_string(i)));
                if (v >= cut.vertex_count) {
                    fail(tpath + "/" + std::to_string(i), "vertex out of range");
                }
                cut.toggles[e].push_back(v);
            }
        }
        const json& jew = expect(j["edge_weights"], path + "/edge_weights",
                                 json::value_t::array, "an array");
        for (std::size_t i = 0; i < jew.size(); ++i) {
            std::string epath = path + "/edge_weights/" + std::to_string(i);
            const json& triple = expect(jew[i], epath, json::value_t::array, "an array");
            if (triple.size() != 3) fail(epath, "expected [u, v, weight]");
            auto u = static_cast<std::uint32_t>(get_uint(triple[0], epath + "/0"));
            auto v = static_cast<std::uint32_t>(get_uint(triple[1], epath + "/1"));
            if (u >= cut.vertex_count || v >= cut.vertex_count) {
                fail(epath, "endpoint out of range");
            }
            cut.edges.emplace_back(u, v, get_weight(triple[2], epath + "/2"));
        }
        return make_cut_objective(std::move(cut));
    }
    fail(path + "/type", "unknown objective type '" + type + "'");
}

}  // namespace

Instance parse_instance(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    expect(j, "", json::value_t::object, "an object");

    Instance inst;
    if (j.contains("meta")) {
        const json& meta = expect(j["meta"], "/meta", json::value_t::object, "an object");
        if (meta.contains("name")) inst.name = get_string(meta["name"], "/meta/name");
        if (meta.contains("notes")) inst.notes = get_string(meta["notes"], "/meta/notes");
    }

    if (!j.contains("elements")) fail("", "missing elements");
    const json& je = expect(j["elements"], "/elements", json::value_t::array, "an array");
    IdTable ids;
    for (std::size_t i = 0; i < je.size(); ++i) {
        std::string path = "/elements/" + std::to_string(i);
        expect(je[i], path, json::value_t::object, "an object");
        if (!je[i].contains("id")) fail(path, "missing id");
        Element el;
        el.id = get_string(je[i]["id"], path + "/id");
        el.weight = je[i].contains("weight") ? get_weight(je[i]["weight"], path + "/weight")
                                             : Rat(0);
        if (ids.index.count(el.id)) fail(path + "/id", "duplicate element id '" + el.id + "'");
        ids.index[el.id] = static_cast<ElementIndex>(i);
        inst.elements.push_back(std::move(el));
    }
    std::size_t n = inst.elements.size();

    if (!j.contains("matroids")) fail("", "missing matroids");
    const json& jm = expect(j["matroids"], "/matroids", json::value_t::array, "an array");
    if (jm.empty()) fail("/matroids", "at least one matroid is required");
    for (std::size_t m = 0; m < jm.size(); ++m) {
        inst.matroids.push_back(
            parse_matroid(jm[m], "/matroids/" + std::to_string(m), ids, n));
    }

    if (j.contains("objective")) {
        inst.objective = parse_objective(j["objective"], "/objective", ids, n);
    }

    if (j.contains("stream_order")) {
        const json& jo =
            expect(j["stream_order"], "/stream_order", json::value_t::array, "an array");
        if (jo.size() != n) fail("/stream_order", "order is not a permutation of the elements");
        std::vector<ElementIndex> order;
        std::vector<char> seen(n, 0);
        for (std::size_t i = 0; i < jo.size(); ++i) {
            std::string path = "/stream_order/" + std::to_string(i);
            ElementIndex e = ids.resolve(get_string(jo[i], path), path);
            if (seen[e]) fail(path, "order repeats an element");
            seen[e] = 1;
            order.push_back(e);
        }
        inst.stream_order = std::move(order);
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open instance file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

namespace {

std::string weight_string(const Rat& value) {
    if (auto dec = to_decimal_string(value)) return *dec;
    return to_fraction_string(value);
}

json matroid_json(const Instance& inst, const MatroidDescriptor& m) {
    json out;
    if (m.is_partition()) {
        const auto& p = m.as_partition();
        out["type"] = "partition";
        std::vector<std::vector<std::string>> blocks(p.capacities.size());
        for (std::size_t e = 0; e < p.block_of.size(); ++e) {
            if (p.block_of[e] >= 0) {
                blocks[static_cast<std::size_t>(p.block_of[e])].push_back(inst.elements[e].id);
            }
        }
        out["blocks"] = blocks;
        out["capacities"] = p.capacities;
    } else if (m.is_uniform()) {
        out["type"] = "uniform";
        out["k"] = m.as_uniform().k;
    } else {
        const auto& g = m.as_graphic();
        out["type"] = "graphic";
        out["vertices"] = g.vertex_count;
        json edges = json::object();
        for (std::size_t e = 0; e < g.edge_of.size(); ++e) {
            edges[inst.elements[e].id] = {g.edge_of[e].first, g.edge_of[e].second};
        }
        out["edges"] = edges;
    }
    return out;
}

json objective_json(const Instance& inst) {
    json out;
    const Objective& obj = inst.objective;
    out["type"] = obj.type_name();
    if (const auto* cov = std::get_if<CoverageObjective>(&obj.impl)) {
        json sets = json::object();
        for (std::size_t e = 0; e < cov->sets.size(); ++e) {
            std::vector<std::string> items;
            for (std::uint32_t item : cov->sets[e]) items.push_back(cov->item_names[item]);
            sets[inst.elements[e].id] = items;
        }
        out["sets"] = sets;
        json weights = json::object();
        for (std::size_t i = 0; i < cov->item_names.size(); ++i) {
            weights[cov->item_names[i]] = weight_string(cov->item_weights[i]);
        }
        out["item_weights"] = weights;
    } else if (const auto* cut = std::get_if<GraphCutObjective>(&obj.impl)) {
        out["vertices"] = cut->vertex_count;
        json toggles = json::object();
        for (std::size_t e = 0; e < cut->toggles.size(); ++e) {
            toggles[inst.elements[e].id] = cut->toggles[e];
        }
        out["toggles"] = toggles;
        json edges = json::array();
        for (const auto& [u, v, w] : cut->edges) {
            edges.push_back({json(u), json(v), json(weight_string(w))});
        }
        out["edge_weights"] = edges;
    }
    return out;
}

}  // namespace

std::string emit_instance(const Instance& inst) {
    json out;
    json meta = json::object();
    if (!inst.name.empty()) meta["name"] = inst.name;
    if (!inst.notes.empty()) meta["notes"] = inst.notes;
    out["meta"] = meta;
    json elements = json::array();
    for (const auto& el : inst.elements) {
        elements.push_back({{"id", el.id}, {"weight", weight_string(el.weight)}});
    }
    out["elements"] = elements;
    json matroids = json::array();
    for (const auto& m : inst.matroids) matroids.push_back(matroid_json(inst, m));
    out["matroids"] = matroids;
    out["objective"] = objective_json(inst);
    if (inst.stream_order) {
        std::vector<std::string> order;
        for (ElementIndex e : *inst.stream_order) order.push_back(inst.elements[e].id);
        out["stream_order"] = order;
    }
    return out.dump(2) + "\n";
}

std::vector<ElementIndex> resolve_order(const Instance& inst, const std::string& mode) {
    if (mode == "file") return inst.default_order();
    if (mode == "reverse") {
        auto order = inst.default_order();
        std::reverse(order.begin(), order.end());
        return order;
    }
    if (mode.rfind("shuffle:", 0) == 0) {
        std::string seed_text = mode.substr(8);
        bool digits = !seed_text.empty() &&
                      std::all_of(seed_text.begin(), seed_text.end(),
                                  [](unsigned char c) { return std::isdigit(c); });
        if (!digits) throw InputError("malformed order mode '" + mode + "'");
        unsigned long long seed = std::strtoull(seed_text.c_str(), nullptr, 10);
        auto order = inst.default_order();
        Rng rng(seed);
        fisher_yates(order, rng);
        return order;
    }
    throw InputError("unknown order mode '" + mode + "' (file | reverse | shuffle:<seed>)");
}

namespace {

void put_rat(json& j, const std::string& key, const Rat& value) {
    j[key] = to_fraction_string(value);
    j[key + "_approx"] = to_approx_string(value);
}

}  // namespace

json stream_report_json(const Instance& inst, const StreamReport& report) {
    json out;
    std::vector<std::string> solution;
    for (ElementIndex e : report.solution) solution.push_back(inst.elements[e].id);
    std::sort(solution.begin(), solution.end());
    out["solution"] = solution;
    put_rat(out, "solution_weight", report.solution_weight);
    put_rat(out, "objective_value", report.objective_value);
    put_rat(out, "g_alive", report.g_alive);
    put_rat(out, "g_all", report.g_all);
    out["peak_stack"] = report.peak_stack;
    if (report.memory_bound) {
        put_rat(out, "memory_bound", *report.memory_bound);
    } else {
        out["memory_bound"] = "unbounded";
    }
    out["solution_certified"] = report.solution_certified;
    out["selected_count"] = report.final_state.stats.selected_count;
    out["deleted_count"] = report.final_state.stats.deleted_count;
    json stack = json::array();
    for (const auto& entry : report.final_state.entries) {
        if (!entry.alive) continue;
        json item;
        item["id"] = inst.elements[entry.element].id;
        item["arrival"] = entry.arrival;
        put_rat(item, "value", entry.value);
        put_rat(item, "g", entry.gain);
        json ws = json::array();
        for (const Rat& w : entry.weights) ws.push_back(to_fraction_string(w));
        item["w"] = ws;
        stack.push_back(std::move(item));
    }
    out["stack"] = stack;
    if (report.ratio_vs_opt) put_rat(out, "ratio_vs_opt", *report.ratio_vs_opt);
    return out;
}

std::string emit_report(const Instance& inst, const RunReport& report) {
    json out = stream_report_json(inst, report.stream);
    out["algo"] = report.algo;
    out["fixture"] = report.fixture;
    json params;
    put_rat(params, "alpha", report.alpha);
    if (report.y) {
        put_rat(params, "y", *report.y);
    } else {
        params["y"] = "inf";
    }
    if (report.epsilon) put_rat(params, "epsilon", *report.epsilon);
    if (report.q) put_rat(params, "q", *report.q);
    if (report.delta) put_rat(params, "delta", *report.delta);
    out["params"] = params;
    out["seed"] = report.seed;
    out["deterministic"] = report.deterministic;
    if (report.opt_weight) put_rat(out, "opt_weight", *report.opt_weight);
    out["wall_ms"] = report.wall_ms;
    return out.dump(2) + "\n";
}

}  // namespace mstream
