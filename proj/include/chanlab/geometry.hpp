// SPDX-License-Identifier: Apache-2.0
//
// chanlab: outdoor urban channel modelling toolkit (0.5-100 GHz)
// Copyright (C) 2026 The chanlab authors
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

#ifndef CHANLAB_GEOMETRY_HPP
#define CHANLAB_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace chanlab {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Sign of the turn a->b->c: > 0 counterclockwise, < 0 clockwise, 0 collinear.
double orient(Point2 a, Point2 b, Point2 c);

// Closed-segment intersection; touching endpoints and collinear overlap count.
bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2);

/// Simple polygon, vertices stored counterclockwise.
class Polygon {
public:
    // Throws ValidationError for < 3 vertices, zero area or self-intersection.
    // Clockwise input is reversed.
    explicit Polygon(std::vector<Point2> vertices);

    std::span<const Point2> vertices() const { return vertices_; }
    std::size_t edge_count() const { return vertices_.size(); }
    std::pair<Point2, Point2> edge(std::size_t i) const
    {
        return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
    }

    // Winding-number test; points on the boundary count as inside.
    bool contains(Point2 p) const;
    bool on_boundary(Point2 p) const;
    double area() const;

    bool bbox_overlaps_segment(Point2 a, Point2 b) const;

private:
    std::vector<Point2> vertices_;
    Point2 lo_, hi_;
};

struct Position2D {
    Point2 point;
    bool indoor = false;
    std::optional<std::size_t> building; // polygon containing the point
};

struct WallCrossing {
    double wall_distance = 0.0; // AP to first boundary crossing [m]
    double depth = 0.0;         // boundary crossing to UE [m]
    std::size_t edge = 0;       // index of the crossed edge in the polygon
    double incidence_deg = 0.0; // angle between the AP->UE ray and the wall normal
};

enum class Blockage { LOS, GeometryBlocked };

/// Immutable set of non-overlapping building footprints.
class BuildingMap {
public:
    BuildingMap() = default;
    // Throws ValidationError if any two polygons touch or overlap.
    explicit BuildingMap(std::vector<Polygon> polygons);

    std::span<const Polygon> polygons() const { return polygons_; }
    bool empty() const { return polygons_.empty(); }

    Position2D locate(Point2 p) const;

    // True iff the segment ap->ue touches no polygon edge and the UE is
    // outdoor. Throws ValidationError for an indoor AP.
    bool is_los(Point2 ap, Point2 ue) const;

    // First crossing of ap->ue with the boundary of the building that holds the
    // UE. Throws ValidationError if the UE is outdoor or the AP indoor.
    WallCrossing outer_wall_distance(Point2 ap, Point2 ue) const;

    Blockage classify_blockage(Point2 ap, Point2 ue) const;

private:
    void require_outdoor_ap(Point2 ap) const;

    std::vector<Polygon> polygons_;
};

} // namespace chanlab

#endif
