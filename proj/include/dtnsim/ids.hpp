#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace dtnsim {

/// Integer identifier tagged with the kind of thing it names, so node and
/// bundle identifiers cannot be mixed up.
template <typename Tag>
struct StrongId {
    std::uint32_t value{0};

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(StrongId, StrongId) = default;

    friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

struct NodeTag {};
struct BundleTag {};

/// Endpoint identifier of a node (EID).
using NodeId = StrongId<NodeTag>;
using BundleId = StrongId<BundleTag>;

}  // namespace dtnsim

template <typename Tag>
struct std::hash<dtnsim::StrongId<Tag>> {
    std::size_t operator()(dtnsim::StrongId<Tag> id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
