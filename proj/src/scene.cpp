// SPDX-License-Identifier: Apache-2.0
//
// isac-twin: digital-twin assisted ISAC beamforming simulator
// Copyright (C) 2026 The isac-twin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/scene.hpp"

#include "isac/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace isac
{

using nlohmann::json;

bool Facet::contains(const Vec3 &p, double tol) const
{
    const Vec3 u = edge_u();
    const Vec3 v = edge_v();
    const Vec3 d = p - corners[0];
    const double lu = u.norm();
    const double lv = v.norm();
    const double su = d.dot(u) / lu;
    const double sv = d.dot(v) / lv;
    return su >= -tol && su <= lu + tol && sv >= -tol && sv <= lv + tol;
}

namespace
{

bool finite(const Vec3 &p) { return p.allFinite(); }

std::string facet_where(std::size_t i) { return "facets[" + std::to_string(i) + "]"; }

void check_region(const Scene &s, const Region &r, const std::string &name, ValidationReport &out)
{
    if (!(std::isfinite(r.x_min) && std::isfinite(r.x_max) && std::isfinite(r.y_min) &&
          std::isfinite(r.y_max) && std::isfinite(r.z)))
    {
        out.push_back({name, "non-finite bounds"});
        return;
    }
    if (r.x_min > r.x_max || r.y_min > r.y_max)
        out.push_back({name, "empty region (min > max)"});
    if (s.room)
    {
        const Vec3 lo(r.x_min, r.y_min, r.z);
        const Vec3 hi(r.x_max, r.y_max, r.z);
        if (!s.room->contains(lo) || !s.room->contains(hi))
            out.push_back({name, "region is not contained in the room bounds"});
    }
}

void check_array(const ArrayGeometry &g, const std::string &name, ValidationReport &out)
{
    if (g.n_elements() == 0)
        out.push_back({name, "array has no elements"});
    for (const auto &p : g.element_positions)
        if (!finite(p))
        {
            out.push_back({name, "non-finite element position"});
            break;
        }
}

} // namespace

ValidationReport validate_scene(const Scene &s)
{
    ValidationReport out;
    if (s.version != kSceneSchemaVersion)
        out.push_back({"version", "unsupported schema version " + std::to_string(s.version)});
    if (!(s.carrier_frequency_hz > 0.0) || !std::isfinite(s.carrier_frequency_hz))
        out.push_back({"carrier_frequency_hz", "must be positive and finite"});
    if (s.room && !((s.room->max.array() > s.room->min.array()).all()))
        out.push_back({"room", "max must exceed min on every axis"});
    if (!finite(s.bs_position))
        out.push_back({"bs.position", "non-finite"});
    else if (s.room && !s.room->contains(s.bs_position))
        out.push_back({"bs.position", "outside the room bounds"});
    check_array(s.tx_array, "bs.tx_array", out);
    check_array(s.rx_array, "bs.rx_array", out);

    for (std::size_t i = 0; i < s.materials.size(); ++i)
    {
        const Material &m = s.materials[i];
        const std::string where = "materials[" + std::to_string(i) + "]";
        if (!(m.reflection_amplitude >= 0.0 && m.reflection_amplitude <= 1.0))
            out.push_back({where, "reflection_amplitude " + std::to_string(m.reflection_amplitude) +
                                      " outside [0,1]"});
        if (!(m.penetration_amplitude >= 0.0 && m.penetration_amplitude <= 1.0))
            out.push_back({where, "penetration_amplitude " + std::to_string(m.penetration_amplitude) +
                                      " outside [0,1]"});
    }

    for (std::size_t i = 0; i < s.facets.size(); ++i)
    {
        const Facet &f = s.facets[i];
        const std::string where = facet_where(i);
        if (f.material >= s.materials.size())
            out.push_back({where, "unknown material index " + std::to_string(f.material)});
        bool ok = true;
        for (const auto &c : f.corners)
            ok = ok && finite(c);
        if (!ok)
        {
            out.push_back({where, "non-finite corner"});
            continue;
        }
        const Vec3 u = f.edge_u();
        const Vec3 v = f.edge_v();
        const double area = u.cross(v).norm();
        if (!(area > 1e-12))
        {
            out.push_back({where, "degenerate facet (zero area)"});
            continue;
        }
        if (std::abs(f.signed_distance(f.corners[2])) > 1e-9)
            out.push_back({where, "corners are not coplanar"});
        else if ((f.corners[2] - (f.corners[1] + v)).norm() > 1e-9)
            out.push_back({where, "corners do not form a parallelogram in boundary order"});
        else if (std::abs(u.dot(v)) > 1e-9 * u.norm() * v.norm())
            out.push_back({where, "corners do not form a rectangle"});
    }

    if (s.fixed_reflector_facet && *s.fixed_reflector_facet >= s.facets.size())
        out.push_back({"fixed_reflector_facet", "index out of range"});

    check_region(s, s.ue_region, "ue_region", out);
    check_region(s, s.target_region, "target_region", out);
    return out;
}

namespace
{

const json &field(const json &j, const char *key, const std::string &path)
{
    if (!j.is_object() || !j.contains(key))
        throw SceneError("missing field '" + path + (path.empty() ? "" : ".") + key + "'");
    return j.at(key);
}

double number(const json &j, const std::string &path)
{
    if (!j.is_number())
        throw SceneError("field '" + path + "' must be a number");
    return j.get<double>();
}

Vec3 point(const json &j, const std::string &path)
{
    if (!j.is_array() || j.size() != 3)
        throw SceneError("field '" + path + "' must be an [x, y, z] array");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
}

std::pair<double, double> interval(const json &j, const std::string &path)
{
    if (!j.is_array() || j.size() != 2)
        throw SceneError("field '" + path + "' must be a [min, max] array");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Region region(const json &j, const std::string &path)
{
    Region r;
    std::tie(r.x_min, r.x_max) = interval(field(j, "x", path), path + ".x");
    std::tie(r.y_min, r.y_max) = interval(field(j, "y", path), path + ".y");
    r.z = number(field(j, "z", path), path + ".z");
    return r;
}

ArrayGeometry array(const json &j, const std::string &path)
{
    if (j.contains("element_positions"))
    {
        const json &e = j.at("element_positions");
        if (!e.is_array())
            throw SceneError("field '" + path + ".element_positions' must be an array");
        ArrayGeometry g;
        for (std::size_t i = 0; i < e.size(); ++i)
            g.element_positions.push_back(point(e[i], path + ".element_positions[" + std::to_string(i) + "]"));
        return g;
    }
    if (j.contains("ula"))
    {
        const json &u = j.at("ula");
        const std::string p = path + ".ula";
        const double n = number(field(u, "n_elements", p), p + ".n_elements");
        if (n < 1 || n != std::floor(n))
            throw SceneError("field '" + p + ".n_elements' must be a positive integer");
        const double spacing = number(field(u, "spacing_wavelengths", p), p + ".spacing_wavelengths");
        const Vec3 axis = point(field(u, "axis", p), p + ".axis");
        if (!(axis.norm() > 0.0))
            throw SceneError("field '" + p + ".axis' must be nonzero");
        return ArrayGeometry::ula(static_cast<std::size_t>(n), spacing, axis);
    }
    throw SceneError("field '" + path + "' needs 'element_positions' or 'ula'");
}

json to_json(const Vec3 &p) { return json::array({p.x(), p.y(), p.z()}); }

json to_json(const Region &r)
{
    return {{"x", {r.x_min, r.x_max}}, {"y", {r.y_min, r.y_max}}, {"z", r.z}};
}

json to_json(const ArrayGeometry &g)
{
    json e = json::array();
    for (const auto &p : g.element_positions)
        e.push_back(to_json(p));
    return {{"element_positions", e}};
}

std::string line_col(const std::string &doc, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < doc.size(); ++i)
    {
        if (doc[i] == '\n')
        {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

Scene parse_scene(const std::string &document)
{
    json j;
    try
    {
        j = json::parse(document);
    }
    catch (const json::parse_error &e)
    {
        throw SceneError("scene parse error at " + line_col(document, e.byte) + ": " + e.what());
    }

    Scene s;
    const double version = number(field(j, "version", ""), "version");
    s.version = static_cast<int>(version);
    if (s.version != kSceneSchemaVersion || version != std::floor(version))
        throw SceneError("unsupported scene schema version " + field(j, "version", "").dump());
    s.carrier_frequency_hz = number(field(j, "carrier_frequency_hz", ""), "carrier_frequency_hz");

    if (j.contains("room"))
    {
        const json &r = j.at("room");
        s.room = Box{point(field(r, "min", "room"), "room.min"), point(field(r, "max", "room"), "room.max")};
    }

    const json &bs = field(j, "bs", "");
    s.bs_position = point(field(bs, "position", "bs"), "bs.position");
    s.tx_array = array(field(bs, "tx_array", "bs"), "bs.tx_array");
    s.rx_array = array(field(bs, "rx_array", "bs"), "bs.rx_array");

    const json &materials = field(j, "materials", "");
    if (!materials.is_array())
        throw SceneError("field 'materials' must be an array");
    for (std::size_t i = 0; i < materials.size(); ++i)
    {
        const std::string p = "materials[" + std::to_string(i) + "]";
        const json &m = materials[i];
        const json &name = field(m, "name", p);
        if (!name.is_string())
            throw SceneError("field '" + p + ".name' must be a string");
        s.materials.push_back({name.get<std::string>(),
                               number(field(m, "reflection_amplitude", p), p + ".reflection_amplitude"),
                               number(field(m, "penetration_amplitude", p), p + ".penetration_amplitude")});
    }

    const json &facets = field(j, "facets", "");
    if (!facets.is_array())
        throw SceneError("field 'facets' must be an array");
    for (std::size_t i = 0; i < facets.size(); ++i)
    {
        const std::string p = facet_where(i);
        const json &fj = facets[i];
        const json &corners = field(fj, "corners", p);
        if (!corners.is_array() || corners.size() != 4)
            throw SceneError("field '" + p + ".corners' must hold exactly 4 points");
        Facet f;
        for (std::size_t c = 0; c < 4; ++c)
            f.corners[c] = point(corners[c], p + ".corners[" + std::to_string(c) + "]");
        const json &mat = field(fj, "material", p);
        if (!mat.is_string())
            throw SceneError("field '" + p + ".material' must be a material name");
        const auto name = mat.get<std::string>();
        std::size_t idx = 0;
        while (idx < s.materials.size() && s.materials[idx].name != name)
            ++idx;
        if (idx == s.materials.size())
            throw SceneError(p + ": unknown material '" + name + "'");
        f.material = idx;
        if (fj.contains("group"))
        {
            if (!fj.at("group").is_string())
                throw SceneError("field '" + p + ".group' must be a string");
            f.group = fj.at("group").get<std::string>();
        }
        s.facets.push_back(f);
    }

    s.ue_region = region(field(j, "ue_region", ""), "ue_region");
    s.target_region = region(field(j, "target_region", ""), "target_region");
    if (j.contains("fixed_reflector_facet"))
    {
        const double idx = number(j.at("fixed_reflector_facet"), "fixed_reflector_facet");
        if (idx < 0 || idx != std::floor(idx))
            throw SceneError("field 'fixed_reflector_facet' must be a non-negative integer");
        s.fixed_reflector_facet = static_cast<std::size_t>(idx);
    }
    return s;
}

Scene load_scene(const std::string &document)
{
    Scene s = parse_scene(document);
    const ValidationReport report = validate_scene(s);
    if (!report.empty())
        throw SceneError("invalid scene: " + report.front().where + ": " + report.front().message);
    return s;
}

std::string read_scene_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw SceneError("cannot open scene file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Scene load_scene_file(const std::string &path) { return load_scene(read_scene_file(path)); }

std::string serialize_scene(const Scene &s)
{
    json j;
    j["version"] = s.version;
    j["carrier_frequency_hz"] = s.carrier_frequency_hz;
    if (s.room)
        j["room"] = {{"min", to_json(s.room->min)}, {"max", to_json(s.room->max)}};
    j["bs"] = {{"position", to_json(s.bs_position)},
               {"tx_array", to_json(s.tx_array)},
               {"rx_array", to_json(s.rx_array)}};
    json mats = json::array();
    for (const auto &m : s.materials)
        mats.push_back({{"name", m.name},
                        {"reflection_amplitude", m.reflection_amplitude},
                        {"penetration_amplitude", m.penetration_amplitude}});
    j["materials"] = mats;
    json facets = json::array();
    for (const auto &f : s.facets)
    {
        json corners = json::array();
        for (const auto &c : f.corners)
            corners.push_back(to_json(c));
        json fj = {{"corners", corners}, {"material", s.materials.at(f.material).name}};
        if (!f.group.empty())
            fj["group"] = f.group;
        facets.push_back(fj);
    }
    j["facets"] = facets;
    j["ue_region"] = to_json(s.ue_region);
    j["target_region"] = to_json(s.target_region);
    if (s.fixed_reflector_facet)
        j["fixed_reflector_facet"] = *s.fixed_reflector_facet;
    return j.dump(2);
}

} // namespace isac
