#include "fieldstar/session.hpp"

#include "fieldstar/error.hpp"
#include "fieldstar/models.hpp"

namespace fieldstar {

Session Session::standard(int dim) {
    Session s;
    s.dim = dim;
    s.declare_real_field("phi", "pi");
    s.declare_complex_field("psi");
    s.labels = {"", "x", "y", "z", "w"};
    s.params = {"m", "kappa"};
    s.functions = {{"U", models::kPhi, models::kPotentialVanish}};
    return s;
}

void Session::declare_real_field(const std::string& name, const std::string& momentum) {
    auto id = static_cast<SortId>(sorts.size());
    sorts.push_back({name, SortKind::Position, static_cast<SortId>(id + 1)});
    sorts.push_back({momentum, SortKind::Momentum, id});
}

void Session::declare_complex_field(const std::string& name) {
    auto id = static_cast<SortId>(sorts.size());
    sorts.push_back({name, SortKind::Holomorphic, static_cast<SortId>(id + 1)});
    sorts.push_back({name + "bar", SortKind::Antiholomorphic, id});
}

namespace {

template <class V, class F>
std::optional<std::uint16_t> find_index(const V& v, const std::string& name, F&& key, std::size_t from = 0) {
    for (std::size_t i = from; i < v.size(); ++i)
        if (key(v[i]) == name) return static_cast<std::uint16_t>(i);
    return std::nullopt;
}

}  // namespace

std::optional<SortId> Session::find_sort(const std::string& name) const {
    return find_index(sorts, name, [](const SortDecl& d) { return d.name; });
}

std::optional<Label> Session::find_label(const std::string& name) const {
    return find_index(labels, name, [](const std::string& d) { return d; }, 1);
}

std::optional<std::uint16_t> Session::find_param(const std::string& name) const {
    return find_index(params, name, [](const std::string& d) { return d; });
}

std::optional<std::uint16_t> Session::find_function(const std::string& name) const {
    return find_index(functions, name, [](const FunctionDecl& d) { return d.name; });
}

Pairing Session::pairing_of(SortId s) const {
    if (s >= sorts.size()) throw Error("unknown sort id");
    const SortDecl& d = sorts[s];
    if (d.kind == SortKind::Position || d.kind == SortKind::Holomorphic) return {s, d.partner};
    return {d.partner, s};
}

bool Session::is_complex(SortId s) const {
    return s < sorts.size() &&
           (sorts[s].kind == SortKind::Holomorphic || sorts[s].kind == SortKind::Antiholomorphic);
}

std::string Session::label_name(Label l) const {
    if (l < labels.size()) return labels[l];
    return "l" + std::to_string(l);
}

}  // namespace fieldstar
