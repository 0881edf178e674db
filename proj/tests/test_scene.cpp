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

#include "isac/errors.hpp"
#include "isac/scene.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <string>

using namespace isac;
using nlohmann::json;

namespace
{

const std::string kCanonical = std::string(ISAC_SOURCE_DIR) + "/scenes/indoor_paper.json";

json minimal_scene()
{
    return json::parse(R"({
      "version": 1,
      "carrier_frequency_hz": 3.5e9,
      "room": {"min": [0, 0, 0], "max": [10, 10, 3]},
      "bs": {"position": [5, 1, 2],
             "tx_array": {"ula": {"n_elements": 4, "spacing_wavelengths": 0.5, "axis": [0, 1, 0]}},
             "rx_array": {"element_positions": [[0, 0, 0], [0, 0.5, 0]]}},
      "materials": [{"name": "glass", "reflection_amplitude": 0.7, "penetration_amplitude": 0.6}],
      "facets": [],
      "ue_region": {"x": [0, 10], "y": [0, 10], "z": 1.5},
      "target_region": {"x": [2, 8], "y": [5, 9], "z": 1.0}
    })");
}

bool has_violation(const ValidationReport &r, const std::string &where, const std::string &fragment)
{
    for (const Violation &v : r)
        if (v.where == where && v.message.find(fragment) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("canonical scene loads with the documented layout", "[scene]")
{
    const Scene s = load_scene_file(kCanonical);
    REQUIRE(s.room);
    CHECK(s.room->max.x() - s.room->min.x() == 30.0);
    CHECK(s.room->max.y() - s.room->min.y() == 40.0);
    CHECK(s.carrier_frequency_hz == 3.5e9);
    CHECK(s.tx_array.n_elements() == 16);
    CHECK(s.rx_array.n_elements() == 16);
    CHECK(validate_scene(s).empty());

    int glass = 0;
    std::vector<double> concrete_y;
    for (const Facet &f : s.facets)
    {
        const Material &m = s.material_of(f);
        if (m.name == "glass")
            ++glass;
        if (m.name == "concrete")
        {
            CHECK(f.group == "interior_wall");
            CHECK(std::abs(f.normal().y()) == Catch::Approx(1.0));
            concrete_y.push_back(f.corners[0].y());
        }
    }
    CHECK(glass == 1);
    REQUIRE(concrete_y.size() == 2);
    CHECK(std::abs(concrete_y[1] - concrete_y[0]) == Catch::Approx(0.2));
    REQUIRE(s.fixed_reflector_facet);
    CHECK(s.material_of(s.facets[*s.fixed_reflector_facet]).name == "glass");
}

TEST_CASE("every target position is behind the concrete wall", "[scene][property]")
{
    const Scene s = load_scene_file(kCanonical);
    const Region &r = s.target_region;
    for (int ix = 0; ix <= 40; ++ix)
        for (int iy = 0; iy <= 26; ++iy)
        {
            const Vec3 p(r.x_min + (r.x_max - r.x_min) * ix / 40.0, r.y_min + (r.y_max - r.y_min) * iy / 26.0, r.z);
            int crossed = 0;
            for (const Facet &f : s.facets)
            {
                if (s.material_of(f).name != "concrete")
                    continue;
                const double da = f.signed_distance(s.bs_position);
                const double db = f.signed_distance(p);
                if (da * db >= 0.0)
                    continue;
                const Vec3 hit = s.bs_position + da / (da - db) * (p - s.bs_position);
                crossed += f.contains(hit) ? 1 : 0;
            }
            INFO("target " << p.transpose());
            CHECK(crossed == 2);
        }
}

TEST_CASE("free-space scene without facets is valid", "[scene]")
{
    const Scene s = load_scene(minimal_scene().dump());
    CHECK(s.facets.empty());
    CHECK(validate_scene(s).empty());
    CHECK(s.tx_array.n_elements() == 4);
    CHECK(s.rx_array.element_positions[1].y() == 0.5);
    CHECK_FALSE(s.fixed_reflector_facet);
}

TEST_CASE("facet with collinear corners is degenerate", "[scene]")
{
    json j = minimal_scene();
    j["facets"] = json::parse(R"([{"corners": [[0,0,0],[1,0,0],[1,0,1],[2,0,0]], "material": "glass"}])");
    Scene s = parse_scene(j.dump());
    CHECK(has_violation(validate_scene(s), "facets[0]", "degenerate"));
    CHECK_THROWS_WITH(load_scene(j.dump()), Catch::Matchers::ContainsSubstring("facets[0]") &&
                                                Catch::Matchers::ContainsSubstring("degenerate"));
}

TEST_CASE("non-rectangular and non-planar facets are reported", "[scene]")
{
    json j = minimal_scene();
    j["facets"] = json::parse(R"([
      {"corners": [[0,0,0],[1,0,0],[1,0.5,1],[0,0,1]], "material": "glass"},
      {"corners": [[0,0,0],[1,0,0],[2,0,1],[1,0,1]], "material": "glass"}])");
    const ValidationReport r = validate_scene(parse_scene(j.dump()));
    CHECK(has_violation(r, "facets[0]", "coplanar"));
    CHECK(has_violation(r, "facets[1]", "rectangle"));
}

TEST_CASE("target region outside the room is a containment violation", "[scene]")
{
    json j = minimal_scene();
    j["target_region"]["x"] = json::array({2, 12});
    CHECK(has_violation(validate_scene(parse_scene(j.dump())), "target_region", "not contained"));
}

TEST_CASE("material coefficient out of range is reported", "[scene]")
{
    json j = minimal_scene();
    j["materials"][0]["reflection_amplitude"] = 1.2;
    CHECK(has_violation(validate_scene(parse_scene(j.dump())), "materials[0]", "outside [0,1]"));
}

TEST_CASE("other invariants", "[scene]")
{
    json j = minimal_scene();
    j["carrier_frequency_hz"] = 0;
    j["bs"]["position"] = json::array({50, 1, 2});
    j["fixed_reflector_facet"] = 3;
    const ValidationReport r = validate_scene(parse_scene(j.dump()));
    CHECK(has_violation(r, "carrier_frequency_hz", "positive"));
    CHECK(has_violation(r, "bs.position", "outside"));
    CHECK(has_violation(r, "fixed_reflector_facet", "out of range"));
}

TEST_CASE("parse errors carry line and column", "[scene]")
{
    CHECK_THROWS_WITH(load_scene("{\n  \"version\": 1,\n  oops\n}"),
                      Catch::Matchers::ContainsSubstring("line 3, column 3"));
}

TEST_CASE("schema errors carry the field path", "[scene]")
{
    json j = minimal_scene();
    j["bs"].erase("position");
    CHECK_THROWS_WITH(load_scene(j.dump()), Catch::Matchers::ContainsSubstring("bs.position"));

    j = minimal_scene();
    j["version"] = 2;
    CHECK_THROWS_AS(load_scene(j.dump()), SceneError);

    j = minimal_scene();
    j["facets"] = json::parse(R"([{"corners": [[0,0,0],[1,0,0],[1,0,1],[0,0,1]], "material": "steel"}])");
    CHECK_THROWS_WITH(load_scene(j.dump()), Catch::Matchers::ContainsSubstring("unknown material 'steel'"));

    CHECK_THROWS_AS(load_scene_file("/nonexistent/scene.json"), SceneError);
}

TEST_CASE("load, serialize, load round-trips", "[scene][property]")
{
    const Scene a = load_scene_file(kCanonical);
    const std::string text = serialize_scene(a);
    const Scene b = load_scene(text);
    CHECK(serialize_scene(b) == text);
    CHECK(a.bs_position == b.bs_position);
    CHECK(a.carrier_frequency_hz == b.carrier_frequency_hz);
    REQUIRE(a.facets.size() == b.facets.size());
    for (std::size_t i = 0; i < a.facets.size(); ++i)
    {
        CHECK(a.facets[i].corners == b.facets[i].corners);
        CHECK(a.facets[i].material == b.facets[i].material);
        CHECK(a.facets[i].group == b.facets[i].group);
    }
    REQUIRE(a.tx_array.n_elements() == b.tx_array.n_elements());
    for (std::size_t i = 0; i < a.tx_array.n_elements(); ++i)
        CHECK(a.tx_array.element_positions[i] == b.tx_array.element_positions[i]);
    CHECK(a.fixed_reflector_facet == b.fixed_reflector_facet);
    CHECK(a.target_region.x_max == b.target_region.x_max);
}
