#include "tmset/specfile.hpp"

#include <fstream>
#include <sstream>

namespace tmset {

namespace {

BigInt parse_bigint(const ordered_json& v, const char* what) {
    if (v.is_number_unsigned())
        return BigInt(static_cast<unsigned long>(v.get<std::uint64_t>()));
    if (v.is_number_integer())
        return BigInt(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_string()) {
        try {
            return BigInt(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw Error(std::string("spec file: bad integer literal for ") +
                        what);
        }
    }
    throw Error(std::string("spec file: expected integer for ") + what);
}

ordered_json bigint_json(const BigInt& v) {
    if (v.fits_slong_p()) return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

RuledFamily family_from_json(const std::string& name,
                             const ordered_json& params) {
    if (name == "ruler-alt") return RuledFamily::ruler_alt();
    if (name == "fat-cantor") return RuledFamily::fat_cantor();
    if (name == "half-dim") return RuledFamily::half_dim();
    if (name == "bad-coverage") {
        std::uint64_t q = 2;
        if (params.contains("q")) q = params.at("q").get<std::uint64_t>();
        return RuledFamily::bad_coverage(q);
    }
    if (name == "frac-dim") {
        if (!params.contains("q") || !params.contains("holes"))
            throw Error("spec file: frac-dim needs params.q and params.holes");
        std::vector<std::uint64_t> holes;
        for (const auto& h : params.at("holes"))
            holes.push_back(h.get<std::uint64_t>());
        return RuledFamily::frac_dim(params.at("q").get<std::uint64_t>(),
                                     std::move(holes));
    }
    throw Error("spec file: unknown family \"" + name + "\"");
}

ordered_json family_params(const RuledFamily& rule) {
    ordered_json params = ordered_json::object();
    switch (rule.kind()) {
        case RuledFamily::Kind::frac_dim: {
            params["q"] = rule.q_param();
            params["holes"] = rule.holes_param();
            break;
        }
        case RuledFamily::Kind::bad_coverage:
            params["q"] = rule.q_param();
            break;
        default:
            break;
    }
    return params;
}

}  // namespace

LoadedSpec parse_spec_text(const std::string& text,
                           std::optional<std::uint64_t> budget,
                           std::optional<int> depth_override) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("spec file: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error("spec file: expected a JSON object");
    if (!doc.contains("version") || doc.at("version") != 1)
        throw Error("spec file: unsupported or missing version (expected 1)");

    const std::uint64_t effective_budget =
        budget.value_or(SkeletonSpec::kDefaultBudget);

    std::string backend = doc.value("backend", std::string("finite"));
    if (doc.contains("family") && !doc.contains("backend")) backend = "ruled";

    if (backend == "ruled") {
        if (!doc.contains("family"))
            throw Error("spec file: ruled backend needs a family name");
        const std::string name = doc.at("family").get<std::string>();
        const ordered_json params = doc.value("params", ordered_json::object());
        int depth = doc.value("depth", 0);
        if (depth_override) depth = *depth_override;
        if (depth < 1)
            throw Error("spec file: ruled backend needs depth >= 1");
        RuledFamily rule = family_from_json(name, params);
        SkeletonSpec spec =
            families::generate(rule, depth, effective_budget);
        LoadedSpec out{spec, emit_spec(spec), ""};
        out.digest = fnv1a_hex(out.canonical.dump());
        return out;
    }
    if (backend != "finite")
        throw Error("spec file: backend must be \"finite\" or \"ruled\"");

    if (!doc.contains("scale") || !doc.at("scale").is_array() ||
        doc.at("scale").empty())
        throw Error("spec file: finite backend needs a nonempty scale array");
    std::vector<std::uint64_t> bases;
    for (const auto& q : doc.at("scale")) {
        if (!q.is_number_unsigned() && !q.is_number_integer())
            throw Error("spec file: scale entries must be integers");
        const std::int64_t v = q.get<std::int64_t>();
        if (v < 2) throw Error("spec file: scale entries must be >= 2");
        bases.push_back(static_cast<std::uint64_t>(v));
    }
    Scale scale(bases);

    std::vector<Layer> layers;
    int last_level = 0;
    for (const auto& jl : doc.value("layers", ordered_json::array())) {
        Layer layer;
        layer.level = jl.value("level", 0);
        if (layer.level <= last_level)
            throw Error("spec file: layer levels must increase strictly "
                        "from 1");
        last_level = layer.level;
        for (const auto& f : jl.value("filled", ordered_json::array())) {
            if (!f.contains("residue") || !f.contains("symbol"))
                throw Error("spec file: fill entries need residue and symbol");
            const int sym = f.at("symbol").get<int>();
            if (sym != 0 && sym != 1)
                throw Error("spec file: symbol must be 0 or 1");
            layer.fills.emplace_back(
                parse_bigint(f.at("residue"), "residue"),
                sym == 1 ? Symbol::one : Symbol::zero);
        }
        layers.push_back(std::move(layer));
    }
    SkeletonSpec spec =
        SkeletonSpec::from_layers(scale, std::move(layers), effective_budget);
    if (depth_override && *depth_override > spec.depth())
        throw Error("spec file: finite spec cannot be deepened beyond its "
                    "scale");
    LoadedSpec out{spec, emit_spec(spec), ""};
    out.digest = fnv1a_hex(out.canonical.dump());
    return out;
}

LoadedSpec load_spec_file(const std::string& path,
                          std::optional<std::uint64_t> budget,
                          std::optional<int> depth_override) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), budget, depth_override);
}

ordered_json emit_spec(const SkeletonSpec& spec) {
    ordered_json doc = ordered_json::object();
    doc["version"] = 1;
    if (spec.backend() == SkeletonSpec::Backend::ruled) {
        doc["backend"] = "ruled";
        doc["family"] = spec.rule()->name();
        doc["params"] = family_params(*spec.rule());
        doc["depth"] = spec.depth();
        return doc;
    }
    doc["backend"] = "finite";
    doc["scale"] = spec.scale().bases();
    ordered_json layers = ordered_json::array();
    for (const auto& layer : spec.layers()) {
        if (layer.fills.empty()) continue;
        ordered_json jl = ordered_json::object();
        jl["level"] = layer.level;
        ordered_json filled = ordered_json::array();
        for (const auto& [r, s] : layer.fills) {
            ordered_json f = ordered_json::object();
            f["residue"] = bigint_json(r);
            f["symbol"] = symbol_value(s);
            filled.push_back(std::move(f));
        }
        jl["filled"] = std::move(filled);
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);
    return doc;
}

std::string spec_digest(const SkeletonSpec& spec) {
    return fnv1a_hex(emit_spec(spec).dump());
}

Rat parse_rat(const ordered_json& v) {
    if (v.is_number_integer() || v.is_number_unsigned())
        return Rat(parse_bigint(v, "rational"));
    if (!v.is_string()) throw Error("expected a rational literal");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw Error("bad rational literal: " + s);
    }
}

Metric load_metric_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open metric file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("metric file: malformed JSON: ") + e.what());
    }
    if (!doc.contains("diameters") || !doc.at("diameters").is_array())
        throw Error("metric file: needs a diameters array");
    std::vector<Rat> d;
    for (const auto& v : doc.at("diameters")) d.push_back(parse_rat(v));
    return Metric::custom(std::move(d));
}

}  // namespace tmset
