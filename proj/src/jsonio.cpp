#include "bh/jsonio.hpp"

#include <fstream>

namespace bh {

namespace {

json edges_to_json(const EdgeSet& es) {
    json arr = json::array();
    for (const auto& e : es) arr.push_back(json::array({e.a().str(), e.b().str()}));
    return arr;
}

EdgeSet edges_from_json(const BalancedHypercube& h, const json& arr, const char* field) {
    if (!arr.is_array()) throw ParseError(std::string(field) + ": expected an array of edges");
    EdgeSet out;
    for (size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError(std::string(field) + "[" + std::to_string(i) +
                             "]: expected [\"x\",\"y\"]");
        Vertex a = Vertex::from_string(e[0].get<std::string>());
        Vertex b = Vertex::from_string(e[1].get<std::string>());
        if (!h.adjacent(a, b))
            throw ParseError(std::string(field) + "[" + std::to_string(i) + "]: (" + a.str() +
                             "," + b.str() + ") is not an edge");
        out.emplace_back(h, a, b);
    }
    sort_unique(out);
    return out;
}

} // namespace

json to_json(const Instance& inst) {
    json j;
    j["n"] = inst.n;
    j["faults"] = edges_to_json(inst.faults);
    j["prescribed"] = edges_to_json(inst.prescribed.edges());
    j["u"] = inst.u.str();
    j["v"] = inst.v.str();
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("field 'n' missing or not an integer");
    int n = j["n"].get<int>();
    if (n < 1 || n > kMaxDim) throw ParseError("field 'n' out of range [1,8]");
    BalancedHypercube h(n);
    EdgeSet F = j.contains("faults") ? edges_from_json(h, j["faults"], "faults") : EdgeSet{};
    EdgeSet Ledges = j.contains("prescribed") ? edges_from_json(h, j["prescribed"], "prescribed") : EdgeSet{};
    if (!j.contains("u") || !j["u"].is_string()) throw ParseError("field 'u' missing or not a string");
    if (!j.contains("v") || !j["v"].is_string()) throw ParseError("field 'v' missing or not a string");
    Vertex u = Vertex::from_string(j["u"].get<std::string>());
    Vertex v = Vertex::from_string(j["v"].get<std::string>());
    return validate_instance(n, std::move(F), LinearForest::validate(std::move(Ledges)), u, v);
}

json to_json(const Path& path, int n) {
    json j;
    j["n"] = n;
    json arr = json::array();
    for (const auto& v : path) arr.push_back(v.str());
    j["path"] = arr;
    return j;
}

Path path_from_json(const json& j) {
    if (!j.contains("path") || !j["path"].is_array()) throw ParseError("field 'path' missing or not an array");
    Path p;
    for (const auto& s : j["path"]) {
        if (!s.is_string()) throw ParseError("path entries must be vertex strings");
        p.push_back(Vertex::from_string(s.get<std::string>()));
    }
    return p;
}

json to_json(const CertReport& rep) {
    json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["instances_checked"] = rep.instances_checked;
    j["inconclusive"] = rep.inconclusive;
    json fails = json::array();
    for (const auto& f : rep.failures) {
        json e;
        e["faults"] = edges_to_json(f.F);
        e["prescribed"] = edges_to_json(f.L);
        e["u"] = f.u.str();
        e["v"] = f.v.str();
        e["inconclusive"] = f.inconclusive;
        fails.push_back(e);
    }
    j["failures"] = fails;
    return j;
}

json to_json(const ValidationReport& rep) {
    json j;
    j["ok"] = rep.ok;
    json arr = json::array();
    for (const auto& v : rep.violations) {
        json e;
        e["kind"] = violation_name(v.kind);
        e["detail"] = v.detail;
        arr.push_back(e);
    }
    j["violations"] = arr;
    return j;
}

namespace {
json parse_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open " + file);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(file + ": " + e.what());
    }
}
} // namespace

Instance load_instance(const std::string& file) { return instance_from_json(parse_file(file)); }

Path load_path(const std::string& file) { return path_from_json(parse_file(file)); }

void save_json(const std::string& file, const json& j) {
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file);
    out << j.dump(2) << "\n";
}

} // namespace bh
