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

#include "chanlab/geometry.hpp"

#include "chanlab/error.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace chanlab {

namespace {

int sign(double v)
{
    return (v > 0.0) - (v < 0.0);
}

// c collinear with a-b is assumed; checks the bounding box.
bool within_box(Point2 a, Point2 b, Point2 c)
{
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

double cross(double ax, double ay, double bx, double by)
{
    return ax * by - ay * bx;
}

} // namespace

double orient(Point2 a, Point2 b, Point2 c)
{
    return cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2)
{
    const int o1 = sign(orient(p1, p2, q1));
    const int o2 = sign(orient(p1, p2, q2));
    const int o3 = sign(orient(q1, q2, p1));
    const int o4 = sign(orient(q1, q2, p2));

    if (o1 * o2 < 0 && o3 * o4 < 0)
        return true;
    if (o1 == 0 && within_box(p1, p2, q1))
        return true;
    if (o2 == 0 && within_box(p1, p2, q2))
        return true;
    if (o3 == 0 && within_box(q1, q2, p1))
        return true;
    if (o4 == 0 && within_box(q1, q2, p2))
        return true;
    return false;
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3)
        throw ValidationError("polygon needs at least 3 vertices, got " + std::to_string(n));
    for (const auto& v : vertices_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw ValidationError("polygon vertex is not finite");

    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % n];
        twice_area += cross(a.x, a.y, b.x, b.y);
    }
    if (twice_area == 0.0)
        throw ValidationError("polygon has zero area");
    if (twice_area < 0.0)
        std::reverse(vertices_.begin(), vertices_.end());

    // Simplicity: non-adjacent edges may not meet, adjacent edges may only
    // share their common vertex.
    for (std::size_t i = 0; i < n; ++i) {
        const auto [a1, a2] = edge(i);
        if (a1 == a2)
            throw ValidationError("polygon has a repeated vertex");
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto [b1, b2] = edge(j);
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent) {
                if (segments_intersect(a1, a2, b1, b2))
                    throw ValidationError("polygon is not simple: edges " + std::to_string(i) + " and " +
                                          std::to_string(j) + " intersect");
                continue;
            }
            // Shared vertex s, far ends u (of edge i) and w (of edge j).
            const Point2 s = (j == i + 1) ? a2 : a1;
            const Point2 u = (j == i + 1) ? a1 : a2;
            const Point2 w = (j == i + 1) ? b2 : b1;
            if (orient(u, s, w) == 0.0 &&
                ((w.x - s.x) * (u.x - s.x) + (w.y - s.y) * (u.y - s.y)) > 0.0)
                throw ValidationError("polygon is not simple: edges " + std::to_string(i) + " and " +
                                      std::to_string(j) + " fold back on each other");
        }
    }

    lo_ = hi_ = vertices_.front();
    for (const auto& v : vertices_) {
        lo_.x = std::min(lo_.x, v.x);
        lo_.y = std::min(lo_.y, v.y);
        hi_.x = std::max(hi_.x, v.x);
        hi_.y = std::max(hi_.y, v.y);
    }
}

double Polygon::area() const
{
    double twice_area = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto [a, b] = edge(i);
        twice_area += cross(a.x, a.y, b.x, b.y);
    }
    return 0.5 * twice_area;
}

bool Polygon::on_boundary(Point2 p) const
{
    for (std::size_t i = 0; i < edge_count(); ++i) {
        const auto [a, b] = edge(i);
        if (orient(a, b, p) == 0.0 && within_box(a, b, p))
            return true;
    }
    return false;
}

bool Polygon::contains(Point2 p) const
{
    if (p.x < lo_.x || p.x > hi_.x || p.y < lo_.y || p.y > hi_.y)
        return false;
    if (on_boundary(p))
        return true;
    int winding = 0;
    for (std::size_t i = 0; i < edge_count(); ++i) {
        const auto [a, b] = edge(i);
        if (a.y <= p.y) {
            if (b.y > p.y && orient(a, b, p) > 0.0)
                ++winding;
        } else if (b.y <= p.y && orient(a, b, p) < 0.0) {
            --winding;
        }
    }
    return winding != 0;
}

bool Polygon::bbox_overlaps_segment(Point2 a, Point2 b) const
{
    return std::max(a.x, b.x) >= lo_.x && std::min(a.x, b.x) <= hi_.x &&
           std::max(a.y, b.y) >= lo_.y && std::min(a.y, b.y) <= hi_.y;
}

BuildingMap::BuildingMap(std::vector<Polygon> polygons) : polygons_(std::move(polygons))
{
    for (std::size_t i = 0; i < polygons_.size(); ++i) {
        for (std::size_t j = i + 1; j < polygons_.size(); ++j) {
            const auto& a = polygons_[i];
            const auto& b = polygons_[j];
            for (std::size_t ei = 0; ei < a.edge_count(); ++ei) {
                const auto [a1, a2] = a.edge(ei);
                if (!b.bbox_overlaps_segment(a1, a2))
                    continue;
                for (std::size_t ej = 0; ej < b.edge_count(); ++ej) {
                    const auto [b1, b2] = b.edge(ej);
                    if (segments_intersect(a1, a2, b1, b2))
                        throw ValidationError("buildings " + std::to_string(i) + " and " + std::to_string(j) +
                                              " touch or overlap");
                }
            }
            // No edge contact, so overlap can only be full containment.
            if (b.contains(a.vertices().front()) || a.contains(b.vertices().front()))
                throw ValidationError("building " + std::to_string(i) + " and building " + std::to_string(j) +
                                      " are nested");
        }
    }
}

Position2D BuildingMap::locate(Point2 p) const
{
    for (std::size_t i = 0; i < polygons_.size(); ++i)
        if (polygons_[i].contains(p))
            return {p, true, i};
    return {p, false, std::nullopt};
}

void BuildingMap::require_outdoor_ap(Point2 ap) const
{
    if (locate(ap).indoor)
        throw ValidationError("access point at (" + std::to_string(ap.x) + ", " + std::to_string(ap.y) +
                              ") lies inside a building");
}

bool BuildingMap::is_los(Point2 ap, Point2 ue) const
{
    require_outdoor_ap(ap);
    for (const auto& poly : polygons_) {
        if (!poly.bbox_overlaps_segment(ap, ue))
            continue;
        if (poly.contains(ue))
            return false;
        for (std::size_t e = 0; e < poly.edge_count(); ++e) {
            const auto [a, b] = poly.edge(e);
            if (segments_intersect(ap, ue, a, b))
                return false;
        }
    }
    return true;
}

Blockage BuildingMap::classify_blockage(Point2 ap, Point2 ue) const
{
    return is_los(ap, ue) ? Blockage::LOS : Blockage::GeometryBlocked;
}

WallCrossing BuildingMap::outer_wall_distance(Point2 ap, Point2 ue) const
{
    require_outdoor_ap(ap);
    const auto where = locate(ue);
    if (!where.indoor)
        throw ValidationError("outer wall distance requires an indoor UE");
    const Polygon& poly = polygons_[*where.building];

    const double rx = ue.x - ap.x;
    const double ry = ue.y - ap.y;
    const double total = std::sqrt(rx * rx + ry * ry);

    double best_t = std::numeric_limits<double>::infinity();
    std::size_t best_edge = 0;
    for (std::size_t e = 0; e < poly.edge_count(); ++e) {
        const auto [a, b] = poly.edge(e);
        const double sx = b.x - a.x;
        const double sy = b.y - a.y;
        const double qx = a.x - ap.x;
        const double qy = a.y - ap.y;
        const double denom = cross(rx, ry, sx, sy);
        double t = std::numeric_limits<double>::infinity();
        if (denom != 0.0) {
            const double tt = cross(qx, qy, sx, sy) / denom;
            const double uu = cross(qx, qy, rx, ry) / denom;
            if (tt >= 0.0 && tt <= 1.0 && uu >= 0.0 && uu <= 1.0)
                t = tt;
        } else if (cross(qx, qy, rx, ry) == 0.0) {
            // Collinear edge: nearest edge endpoint that lies on the ray segment.
            const double rr = rx * rx + ry * ry;
            for (const Point2 v : {a, b}) {
                const double tv = ((v.x - ap.x) * rx + (v.y - ap.y) * ry) / rr;
                if (tv >= 0.0 && tv <= 1.0)
                    t = std::min(t, tv);
            }
        }
        if (t < best_t) {
            best_t = t;
            best_edge = e;
        }
    }
    // The UE is inside or on the polygon, so some edge is always crossed.
    if (!std::isfinite(best_t))
        best_t = 1.0;

    WallCrossing out;
    out.wall_distance = best_t * total;
    out.depth = total - out.wall_distance;
    out.edge = best_edge;
    const auto [a, b] = poly.edge(best_edge);
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double el = std::sqrt(ex * ex + ey * ey);
    if (total > 0.0) {
        // |sin| of the ray-to-wall angle is |cos| of the ray-to-normal angle.
        const double c = std::min(1.0, std::abs(cross(rx, ry, ex, ey)) / (total * el));
        out.incidence_deg = std::acos(c) * 180.0 / 3.14159265358979323846;
    }
    return out;
}

} // namespace chanlab
