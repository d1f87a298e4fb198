#include "qfc/serialize.hpp"

#include <json.hpp>

#include <limits>

#include "qfc/errors.hpp"

namespace qfc {

namespace {

using Json = nlohmann::ordered_json;

Json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();  // decimal string beyond 64 bits
}

Int json_to_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw InvalidArgument("json: expected an integer or a decimal string");
}

Json counts_to_json(const std::vector<Int>& counts) {
    Json arr = Json::array();
    for (const Int& c : counts) arr.push_back(int_to_json(c));
    return arr;
}

std::vector<Int> json_to_counts(const Json& arr) {
    if (!arr.is_array()) throw InvalidArgument("json: expected an array of counts");
    std::vector<Int> counts;
    counts.reserve(arr.size());
    for (const auto& v : arr) counts.push_back(json_to_int(v));
    return counts;
}

Json strategy_node(const StrategyTree& t, int q) {
    Json node;
    node["state"] = counts_to_json(t.state.counts());
    node["n"] = t.n;
    node["q"] = q;
    if (t.partition) {
        Json parts = Json::array();
        for (const auto& part : t.partition->parts) parts.push_back(counts_to_json(part));
        node["partition"] = std::move(parts);
        Json children = Json::array();
        for (const auto& child : t.children) children.push_back(strategy_node(child, q));
        node["children"] = std::move(children);
    }
    return node;
}

StrategyTree node_from_json(const Json& node) {
    StrategyTree t{State(json_to_counts(node.at("state"))), node.at("n").get<int>(), std::nullopt, {}};
    if (node.contains("partition")) {
        Partition p;
        for (const auto& part : node.at("partition")) p.parts.push_back(json_to_counts(part));
        t.partition = std::move(p);
        for (const auto& child : node.at("children")) t.children.push_back(node_from_json(child));
    }
    return t;
}

}  // namespace

std::string strategy_to_json(const StrategyTree& t, int q, int indent) {
    return strategy_node(t, q).dump(indent);
}

StrategyTree strategy_from_json(const std::string& text) {
    Json parsed;
    try {
        parsed = Json::parse(text);
    } catch (const std::exception& err) {
        throw InvalidArgument(std::string("strategy json: ") + err.what());
    }
    return node_from_json(parsed);
}

std::string code_to_json(const FeedbackCode& code, int indent) {
    Json doc;
    doc["M"] = int_to_json(code.M);
    doc["e"] = code.e;
    doc["q"] = code.q;
    doc["n"] = code.n;
    doc["policy_budget"] = code.policy_budget;
    doc["rate"] = rate_string(code);
    if (const auto* tree = std::get_if<TreePolicy>(&code.policy)) {
        doc["kind"] = "tree";
        doc["tree"] = Json::parse(strategy_to_json(tree->root, code.q, -1));
    } else {
        const auto& table = std::get<TablePolicy>(code.policy);
        doc["kind"] = "table";
        doc["table"] = Json{{"start_m", table.start_m}, {"i", table.i}};
    }
    if (!code.overrides.empty()) {
        Json overrides = Json::array();
        for (const auto& [transcript, parts] : code.overrides) {
            Json entry;
            entry["transcript"] = transcript;
            Json jparts = Json::array();
            for (const auto& part : parts) jparts.push_back(counts_to_json(part));
            entry["parts"] = std::move(jparts);
            overrides.push_back(std::move(entry));
        }
        doc["overrides"] = std::move(overrides);
    }
    return doc.dump(indent);
}

FeedbackCode code_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const std::exception& err) {
        throw InvalidArgument(std::string("code json: ") + err.what());
    }
    const Int M = json_to_int(doc.at("M"));
    const int e = doc.at("e").get<int>();
    const int q = doc.at("q").get<int>();
    const std::string kind = doc.at("kind").get<std::string>();

    FeedbackCode code;
    if (kind == "tree") {
        code = build_from_strategy(node_from_json(doc.at("tree")), M, e);
        if (code.q != q && code.n > 0) throw InvalidArgument("code json: q does not match the tree");
        code.q = q;
    } else if (kind == "table") {
        code = build_from_table(M, e, q);
        if (doc.contains("table")) {
            if (code.n != doc.at("n").get<int>())
                throw InvalidArgument("code json: stored block length does not match the construction");
        }
    } else {
        throw InvalidArgument("code json: unknown kind '" + kind + "'");
    }
    if (doc.contains("overrides")) {
        for (const auto& entry : doc.at("overrides")) {
            ExplicitParts parts;
            for (const auto& part : entry.at("parts")) parts.push_back(json_to_counts(part));
            add_assignment_override(code, entry.at("transcript").get<std::vector<int>>(),
                                    std::move(parts));
        }
    }
    return code;
}

}  // namespace qfc
