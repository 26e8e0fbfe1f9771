#include "fracgeom/json_io.hpp"

#include <stdexcept>

namespace fracgeom {

namespace {

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() > 2 || j.empty()) throw std::invalid_argument("expected [x] or [x,y]");
    Vec2 v{j[0].get<double>(), j.size() > 1 ? j[1].get<double>() : 0.0};
    return v;
}

json profile_to_json(const Profile& p) {
    switch (p.kind()) {
        case Profile::Kind::Linear: return {{"kind", "linear"}, {"slope", p.a()}, {"intercept", p.c()}};
        case Profile::Kind::Quadratic: return {{"kind", "quadratic"}, {"a", p.a()}, {"c", p.c()}};
        case Profile::Kind::Cubic: return {{"kind", "cubic"}, {"a", p.a()}, {"c", p.c()}};
        case Profile::Kind::AbsPower:
            return {{"kind", "abs_power"}, {"a", p.a()}, {"p", p.p()}, {"c", p.c()}};
        case Profile::Kind::BoundedTanh: return {{"kind", "bounded_tanh"}, {"a", p.a()}, {"c", p.c()}};
        case Profile::Kind::Table: throw std::invalid_argument("profile table serialization unsupported");
    }
    throw std::logic_error("unreachable");
}

Profile profile_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return Profile::linear(j.at("slope"), j.value("intercept", 0.0));
    if (kind == "quadratic") return Profile::quadratic(j.at("a"), j.value("c", 0.0));
    if (kind == "cubic") return Profile::cubic(j.at("a"), j.value("c", 0.0));
    if (kind == "abs_power") return Profile::abs_power(j.at("a"), j.at("p"), j.value("c", 0.0));
    if (kind == "bounded_tanh") return Profile::bounded_tanh(j.at("a"), j.value("c", 0.0));
    if (kind == "table") {
        return Profile::table(j.at("xs").get<std::vector<double>>(),
                              j.at("vals").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown profile kind: " + kind);
}

}  // namespace

json to_json(const SetDescriptor& s) {
    const SetNode& n = s.node();
    if (auto* d = std::get_if<HalfSpaceData>(&n.v))
        return {{"variant", "half_space"}, {"normal", vec_to_json(d->normal)},
                {"offset", d->offset}, {"dim", d->dim}};
    if (auto* d = std::get_if<BallData>(&n.v))
        return {{"variant", "ball"}, {"center", vec_to_json(d->center)},
                {"radius", d->radius}, {"dim", d->dim}};
    if (auto* d = std::get_if<AngularConeData>(&n.v)) {
        json arcs = json::array();
        for (const auto& [a, b] : d->arcs) arcs.push_back(json::array({a, b}));
        return {{"variant", "angular_cone"}, {"vertex", vec_to_json(d->vertex)}, {"arcs", arcs}};
    }
    if (auto* d = std::get_if<IntervalUnionData>(&n.v)) {
        json iv = json::array();
        for (const auto& [a, b] : d->intervals) iv.push_back(json::array({a, b}));
        return {{"variant", "interval_union"}, {"intervals", iv}};
    }
    if (auto* d = std::get_if<PolygonData>(&n.v)) {
        json vs = json::array();
        for (const Vec2& v : d->vertices) vs.push_back(vec_to_json(v));
        return {{"variant", "polygon"}, {"vertices", vs}};
    }
    if (auto* d = std::get_if<SubgraphData>(&n.v))
        return {{"variant", "subgraph"}, {"profile", profile_to_json(d->profile)}};
    if (auto* d = std::get_if<ComplementData>(&n.v))
        return {{"variant", "complement"}, {"inner", to_json(SetDescriptor::wrap(d->inner))}};
    if (auto* d = std::get_if<TransformedData>(&n.v))
        return {{"variant", "transformed"}, {"inner", to_json(SetDescriptor::wrap(d->inner))},
                {"scale", d->scale}, {"rotation", d->rot_angle},
                {"translation", vec_to_json(d->translation)}};
    throw std::logic_error("unreachable");
}

SetDescriptor set_from_json(const json& j) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "half_space")
        return SetDescriptor::half_space(vec_from_json(j.at("normal")), j.at("offset"),
                                         j.value("dim", 2));
    if (v == "ball")
        return SetDescriptor::ball(vec_from_json(j.at("center")), j.at("radius"), j.value("dim", 2));
    if (v == "angular_cone") {
        std::vector<std::pair<double, double>> arcs;
        for (const auto& a : j.at("arcs")) arcs.emplace_back(a[0].get<double>(), a[1].get<double>());
        return SetDescriptor::angular_cone(vec_from_json(j.at("vertex")), std::move(arcs));
    }
    if (v == "interval_union") {
        std::vector<std::pair<double, double>> iv;
        for (const auto& a : j.at("intervals")) iv.emplace_back(a[0].get<double>(), a[1].get<double>());
        return SetDescriptor::interval_union(std::move(iv));
    }
    if (v == "polygon") {
        std::vector<Vec2> vs;
        for (const auto& a : j.at("vertices")) vs.push_back(vec_from_json(a));
        return SetDescriptor::polygon(std::move(vs));
    }
    if (v == "subgraph") return SetDescriptor::subgraph(profile_from_json(j.at("profile")));
    if (v == "complement") return SetDescriptor::complement(set_from_json(j.at("inner")));
    if (v == "transformed")
        return set_from_json(j.at("inner"))
            .transform(j.at("scale"), j.value("rotation", 0.0),
                       vec_from_json(j.value("translation", json::array({0.0, 0.0}))));
    throw std::invalid_argument("unknown set variant: " + v);
}

json to_json(const BoxDomain& d) {
    if (d.is_ball)
        return {{"type", "ball"}, {"center", vec_to_json(d.center)}, {"radius", d.radius}};
    return {{"type", "box"}, {"lo", vec_to_json(d.box.lo)}, {"hi", vec_to_json(d.box.hi)}};
}

BoxDomain domain_from_json(const json& j) {
    const std::string t = j.value("type", "box");
    if (t == "ball") return BoxDomain::make_ball(vec_from_json(j.at("center")), j.at("radius"));
    return BoxDomain::make_box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
}

json to_json(const PerimeterReport& r) {
    return {{"local", r.local}, {"nonlocal", r.nonlocal}, {"total", r.total},
            {"est_error", r.est_error}, {"truncation_radius_used", r.truncation_radius_used}};
}

}  // namespace fracgeom
