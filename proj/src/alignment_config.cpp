#include "sigma/alignment_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "text_util.hpp"

namespace sigma {

std::string_view to_string(SimKind kind)
{
    switch (kind) {
    case SimKind::Year:
        return "year";
    case SimKind::Exact:
        return "exact";
    case SimKind::String:
        return "string";
    }
    return "?";
}

std::string_view to_string(NeighborWeightMode mode)
{
    return mode == NeighborWeightMode::Uniform ? "uniform" : "inverse";
}

std::string_view to_string(SeedMode mode)
{
    switch (mode) {
    case SeedMode::ExactString:
        return "exact";
    case SeedMode::File:
        return "file";
    case SeedMode::None:
        return "none";
    }
    return "?";
}

SimKind parse_sim_kind(std::string_view s)
{
    if (s == "year") {
        return SimKind::Year;
    }
    if (s == "exact") {
        return SimKind::Exact;
    }
    if (s == "string") {
        return SimKind::String;
    }
    throw ConfigError(fmt::format("unknown sim_kind '{}' (expected year|exact|string)", s));
}

NeighborWeightMode parse_neighbor_weight_mode(std::string_view s)
{
    if (s == "uniform") {
        return NeighborWeightMode::Uniform;
    }
    if (s == "inverse") {
        return NeighborWeightMode::Inverse;
    }
    throw ConfigError(fmt::format("unknown neighbor weight mode '{}' (expected uniform|inverse)", s));
}

SeedMode parse_seed_mode(std::string_view s)
{
    if (s == "exact" || s == "exact_string") {
        return SeedMode::ExactString;
    }
    if (s == "file") {
        return SeedMode::File;
    }
    if (s == "none") {
        return SeedMode::None;
    }
    throw ConfigError(fmt::format("unknown seed mode '{}' (expected exact|file|none)", s));
}

namespace {

double parse_double(std::string_view name, std::string_view value)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("parameter '{}': '{}' is not a number", name, value));
    }
    return out;
}

bool parse_bool(std::string_view name, std::string_view value)
{
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError(fmt::format("parameter '{}': '{}' is not a boolean", name, value));
}

WeightMode parse_weight_mode(std::string_view name, std::string_view value)
{
    if (value == "idf") {
        return WeightMode::Idf;
    }
    if (value == "uniform") {
        return WeightMode::Uniform;
    }
    throw ConfigError(fmt::format("parameter '{}': expected idf|uniform, got '{}'", name, value));
}

}  // namespace

void AlignmentConfig::set_param(std::string_view name, std::string_view value)
{
    if (name == "alpha") {
        alpha = parse_double(name, value);
    } else if (name == "beta") {
        beta = parse_double(name, value);
    } else if (name == "threshold" || name == "stop_threshold") {
        stop_threshold = parse_double(name, value);
    } else if (name == "s0_threshold") {
        s0_threshold = parse_double(name, value);
    } else if (name == "smoothing") {
        if (value == "auto") {
            smoothing.reset();
        } else {
            smoothing = parse_double(name, value);
        }
    } else if (name == "neighbor_weight") {
        neighbor_weight = parse_neighbor_weight_mode(value);
    } else if (name == "string_weight") {
        string_weight = parse_weight_mode(name, value);
    } else if (name == "property_weight") {
        property_weight = parse_weight_mode(name, value);
    } else if (name == "seed_mode") {
        seed_mode = parse_seed_mode(value);
    } else if (name == "use_s0") {
        use_s0 = parse_bool(name, value);
    } else if (name == "propose_neighbors") {
        propose_neighbors = parse_bool(name, value);
    } else if (name == "stopword_count") {
        double n = parse_double(name, value);
        if (n < 0 || n != static_cast<double>(static_cast<std::size_t>(n))) {
            throw ConfigError(fmt::format("parameter 'stopword_count': bad value '{}'", value));
        }
        stopword_count = static_cast<std::size_t>(n);
    } else {
        throw ConfigError(fmt::format("unknown parameter '{}'", name));
    }
}

void AlignmentConfig::validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError(fmt::format("alpha must be in [0,1], got {}", alpha));
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw ConfigError(fmt::format("beta must be in [0,1], got {}", beta));
    }
    if (!(stop_threshold >= 0.0)) {
        throw ConfigError(fmt::format("threshold must be >= 0, got {}", stop_threshold));
    }
    if (smoothing && !(*smoothing >= 0.0)) {
        throw ConfigError(fmt::format("smoothing must be >= 0, got {}", *smoothing));
    }
}

AlignmentConfig parse_alignment_config(std::istream& in, std::string_view source)
{
    AlignmentConfig config;
    std::string line;
    std::size_t line_no = 0;
    const std::string src(source);
    while (std::getline(in, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        auto fields = detail::split_tabs(line);
        const std::string_view kind = fields.front();
        try {
            if (kind == "rel") {
                if (fields.size() != 3) {
                    throw ParseError(src, line_no, "expected 3 fields: rel <r1> <r2>");
                }
                config.relations.push_back({std::string(fields[1]), std::string(fields[2])});
            } else if (kind == "prop") {
                if (fields.size() != 4) {
                    throw ParseError(src, line_no, "expected 4 fields: prop <p1> <p2> <sim_kind>");
                }
                config.properties.push_back(
                    {std::string(fields[1]), std::string(fields[2]), parse_sim_kind(fields[3])});
            } else if (kind == "label") {
                if (fields.size() != 3) {
                    throw ParseError(src, line_no, "expected 3 fields: label <p1> <p2>");
                }
                config.label_first = std::string(fields[1]);
                config.label_second = std::string(fields[2]);
            } else if (kind == "param") {
                if (fields.size() != 3) {
                    throw ParseError(src, line_no, "expected 3 fields: param <name> <value>");
                }
                config.set_param(fields[1], fields[2]);
            } else {
                throw ParseError(src, line_no, fmt::format("unknown line kind '{}'", kind));
            }
        } catch (const ConfigError& e) {
            throw ParseError(src, line_no, e.what());
        }
    }
    config.validate();
    return config;
}

AlignmentConfig load_alignment_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open mapping file");
    }
    return parse_alignment_config(in, path);
}

ResolvedMapping resolve_mapping(const AlignmentConfig& config, KnowledgeBase& first,
                                KnowledgeBase& second)
{
    ResolvedMapping out;
    auto warn = [&](std::string msg) {
        spdlog::warn("{}", msg);
        out.warnings.push_back(std::move(msg));
    };

    for (const RelationMatch& m : config.relations) {
        auto r = first.find_relation(m.first);
        auto s = second.find_relation(m.second);
        if (!r && !s) {
            warn(fmt::format("relation pair ({}, {}) absent from both KBs; ignored", m.first,
                             m.second));
            continue;
        }
        if (!r || !s) {
            warn(fmt::format("relation '{}' missing from {}; pair ignored", !r ? m.first : m.second,
                             !r ? first.name() : second.name()));
            continue;
        }
        out.relations.emplace_back(*r, *s);
        out.relations.emplace_back(KnowledgeBase::inverse(*r), KnowledgeBase::inverse(*s));
    }
    std::sort(out.relations.begin(), out.relations.end());
    out.relations.erase(std::unique(out.relations.begin(), out.relations.end()),
                        out.relations.end());

    for (const PropertyMatch& m : config.properties) {
        auto p = first.find_property(m.first);
        auto q = second.find_property(m.second);
        if (!p || !q) {
            warn(fmt::format("property pair ({}, {}) not present in both KBs; ignored", m.first,
                             m.second));
            continue;
        }
        out.properties.push_back({*p, *q, m.kind});
    }

    auto install_label = [&](KnowledgeBase& kb, const std::string& name) {
        if (name.empty()) {
            warn(fmt::format("no label property configured for {}", kb.name()));
            return;
        }
        if (auto p = kb.find_property(name)) {
            kb.set_label_property(*p);
        } else {
            warn(fmt::format("label property '{}' not found in {}", name, kb.name()));
        }
    };
    install_label(first, config.label_first);
    install_label(second, config.label_second);
    return out;
}

}  // namespace sigma
