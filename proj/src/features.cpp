// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/features.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chromafix {

int feature_count(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Aff2: return 3;
        case FeatureKind::Aff3: return 4;
        case FeatureKind::Van0: return 7;    // 1 + 3 * 2
        case FeatureKind::Van1: return 10;
        case FeatureKind::Van2: return 13;
        case FeatureKind::Van3: return 16;
        case FeatureKind::Che0: return 5;
        case FeatureKind::Che1: return 7;
        case FeatureKind::Che2: return 8;
        case FeatureKind::Che3: return 10;
        case FeatureKind::Fin0: return 9;
        case FeatureKind::Fin1: return 19;
        case FeatureKind::Fin2: return 6;
        case FeatureKind::Fin3: return 13;
    }
    throw std::invalid_argument("unknown feature kind");
}

namespace {

// Per-channel powers (1, r, g, b, r^2, g^2, b^2, ..., r^d, g^d, b^d).
void van_features(int degree, const RgbF& c, Eigen::Ref<Eigen::VectorXd> out) {
    out[0] = 1.0;
    RgbF p = c;
    int k = 1;
    for (int d = 1; d <= degree; ++d) {
        out[k++] = p.x();
        out[k++] = p.y();
        out[k++] = p.z();
        p = p.cwiseProduct(c);
    }
}

}  // namespace

void build_features(FeatureKind kind, const RgbF& c, Eigen::Ref<Eigen::VectorXd> out) {
    const double r = c.x(), g = c.y(), b = c.z();
    switch (kind) {
        case FeatureKind::Aff2:
            out[0] = r; out[1] = g; out[2] = b;
            return;
        case FeatureKind::Aff3:
            out[0] = 1.0; out[1] = r; out[2] = g; out[3] = b;
            return;
        case FeatureKind::Van0: van_features(2, c, out); return;
        case FeatureKind::Van1: van_features(3, c, out); return;
        case FeatureKind::Van2: van_features(4, c, out); return;
        case FeatureKind::Van3: van_features(5, c, out); return;
        case FeatureKind::Che0:
            out[0] = 1.0; out[1] = r; out[2] = g; out[3] = b; out[4] = r * g * b;
            return;
        case FeatureKind::Che1:
            out[0] = 1.0; out[1] = r; out[2] = g; out[3] = b;
            out[4] = r * g; out[5] = r * b; out[6] = g * b;
            return;
        case FeatureKind::Che2:
            out[0] = 1.0; out[1] = r; out[2] = g; out[3] = b;
            out[4] = r * g; out[5] = r * b; out[6] = g * b; out[7] = r * g * b;
            return;
        case FeatureKind::Che3:
            out[0] = 1.0; out[1] = r; out[2] = g; out[3] = b;
            out[4] = r * g; out[5] = r * b; out[6] = g * b;
            out[7] = r * r; out[8] = g * g; out[9] = b * b;
            return;
        case FeatureKind::Fin0:
            out[0] = r; out[1] = g; out[2] = b;
            out[3] = r * r; out[4] = g * g; out[5] = b * b;
            out[6] = r * g; out[7] = r * b; out[8] = g * b;
            return;
        case FeatureKind::Fin1:
            out[0] = r; out[1] = g; out[2] = b;
            out[3] = r * r; out[4] = g * g; out[5] = b * b;
            out[6] = r * g; out[7] = r * b; out[8] = g * b;
            out[9] = r * r * r; out[10] = g * g * g; out[11] = b * b * b;
            out[12] = r * r * g; out[13] = r * r * b;
            out[14] = g * g * r; out[15] = g * g * b;
            out[16] = b * b * r; out[17] = b * b * g;
            out[18] = r * g * b;
            return;
        case FeatureKind::Fin2: {
            const double rp = std::max(r, 0.0), gp = std::max(g, 0.0), bp = std::max(b, 0.0);
            out[0] = r; out[1] = g; out[2] = b;
            out[3] = std::sqrt(rp * gp);
            out[4] = std::sqrt(rp * bp);
            out[5] = std::sqrt(gp * bp);
            return;
        }
        case FeatureKind::Fin3: {
            const double rp = std::max(r, 0.0), gp = std::max(g, 0.0), bp = std::max(b, 0.0);
            out[0] = r; out[1] = g; out[2] = b;
            out[3] = std::sqrt(rp * gp);
            out[4] = std::sqrt(rp * bp);
            out[5] = std::sqrt(gp * bp);
            out[6] = std::cbrt(rp * rp * gp);
            out[7] = std::cbrt(rp * rp * bp);
            out[8] = std::cbrt(gp * gp * rp);
            out[9] = std::cbrt(gp * gp * bp);
            out[10] = std::cbrt(bp * bp * rp);
            out[11] = std::cbrt(bp * bp * gp);
            out[12] = std::cbrt(rp * gp * bp);
            return;
        }
    }
    throw std::invalid_argument("unknown feature kind");
}

Eigen::VectorXd build_features(FeatureKind kind, const RgbF& c) {
    Eigen::VectorXd out(feature_count(kind));
    build_features(kind, c, out);
    return out;
}

const char* to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Aff2: return "AFF2";
        case FeatureKind::Aff3: return "AFF3";
        case FeatureKind::Van0: return "VAN0";
        case FeatureKind::Van1: return "VAN1";
        case FeatureKind::Van2: return "VAN2";
        case FeatureKind::Van3: return "VAN3";
        case FeatureKind::Che0: return "CHE0";
        case FeatureKind::Che1: return "CHE1";
        case FeatureKind::Che2: return "CHE2";
        case FeatureKind::Che3: return "CHE3";
        case FeatureKind::Fin0: return "FIN0";
        case FeatureKind::Fin1: return "FIN1";
        case FeatureKind::Fin2: return "FIN2";
        case FeatureKind::Fin3: return "FIN3";
    }
    return "?";
}

FeatureKind feature_kind_from_string(std::string_view name) {
    static const FeatureKind kinds[] = {
        FeatureKind::Aff2, FeatureKind::Aff3, FeatureKind::Van0, FeatureKind::Van1,
        FeatureKind::Van2, FeatureKind::Van3, FeatureKind::Che0, FeatureKind::Che1,
        FeatureKind::Che2, FeatureKind::Che3, FeatureKind::Fin0, FeatureKind::Fin1,
        FeatureKind::Fin2, FeatureKind::Fin3,
    };
    for (FeatureKind kind : kinds)
        if (name == to_string(kind))
            return kind;
    throw std::invalid_argument("unknown feature kind: " + std::string(name));
}

}  // namespace chromafix
