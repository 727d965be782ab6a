#ifndef GRIDLAB_WORLD_H_
#define GRIDLAB_WORLD_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gridlab/event.h"
#include "gridlab/rng.h"
#include "gridlab/types.h"

namespace gridlab {

// A named bundle that fixes a piece's layer, appearance, group membership and
// contact tag. Immutable once the world is built.
struct StateDescriptor {
  std::string name;
  std::string layer;
  std::string sprite;  // empty = invisible
  std::vector<std::string> groups;
  std::string contact;  // empty = emits no contact events
};

struct Piece {
  PieceId id;
  std::optional<GridPosition> position;  // nullopt = off the board
  Orientation orientation = Orientation::kNorth;
  StateIndex state;
};

enum class RelativeMove { kForward, kBackward, kStrafeLeft, kStrafeRight };

// Either relative to the piece's facing or an absolute (dx, dy) offset.
using Move = std::variant<RelativeMove, Vec2>;

struct MoveResult {
  bool moved = false;
  GridPosition position;  // new position when moved, unchanged otherwise

  explicit operator bool() const { return moved; }
};

enum class Turn { kLeft, kRight, kAbout };
using TurnSpec = std::variant<Turn, Orientation>;

enum class StateChange { kChanged, kBlocked };
enum class PlaceResult { kPlaced, kBlocked };

class World;

using UpdateHandler = std::function<void(World&, PieceId self)>;
using ContactHandler = std::function<void(World&, PieceId self, PieceId other)>;
using HitHandler = std::function<void(World&, PieceId self, PieceId source)>;
using LifecycleHandler = std::function<void(World&, PieceId self)>;

// Handlers attached to one state. Keys are group names (on_update), the other
// piece's contact tag (on_contact_*), or a beam name (on_hit). Handlers must
// change the world only through World operations.
struct CallbackTable {
  std::vector<std::pair<std::string, UpdateHandler>> on_update;
  std::vector<std::pair<std::string, ContactHandler>> on_contact_enter;
  std::vector<std::pair<std::string, ContactHandler>> on_contact_leave;
  std::vector<std::pair<std::string, HitHandler>> on_hit;
  LifecycleHandler on_state_enter;
  LifecycleHandler on_state_exit;
};

// One side of a contact between two co-located pieces: `receiver` learns that
// `emitter`, carrying contact tag `tag`, entered or left its (x, y).
struct ContactEvent {
  enum class Kind : std::uint8_t { kEnter, kLeave };
  Kind kind;
  PieceId receiver;
  PieceId emitter;
  std::uint32_t tag;  // index into World::contact_tags()

  bool operator==(const ContactEvent&) const = default;
};

// Callback recursion deeper than this raises TickError.
inline constexpr int kMaxCallbackDepth = 64;

// Layered discrete grid holding pieces. Each (x, y, layer) holds at most one
// piece. Single-owner: no operation is safe to call concurrently.
class World {
 public:
  World(int width, int height, std::span<const std::string> layers,
        std::span<const StateDescriptor> states, std::uint64_t seed);

  World(const World&) = default;
  World& operator=(const World&) = default;
  World(World&&) noexcept = default;
  World& operator=(World&&) noexcept = default;

  int width() const { return width_; }
  int height() const { return height_; }
  bool InBounds(Vec2 c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }

  // Registries.
  std::size_t num_layers() const { return layer_names_.size(); }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_groups() const { return group_names_.size(); }
  const std::string& layer_name(LayerIndex l) const { return layer_names_[l.value]; }
  const StateDescriptor& state(StateIndex s) const { return states_[s.value].desc; }
  LayerIndex state_layer(StateIndex s) const { return states_[s.value].layer; }
  const std::string& group_name(GroupIndex g) const { return group_names_[g.value]; }
  std::span<const std::string> contact_tags() const { return contact_tags_; }

  // Name lookups throw ConfigError when the name is unknown.
  LayerIndex Layer(std::string_view name) const;
  StateIndex State(std::string_view name) const;
  GroupIndex Group(std::string_view name) const;
  std::optional<LayerIndex> FindLayer(std::string_view name) const;
  std::optional<StateIndex> FindState(std::string_view name) const;
  std::optional<GroupIndex> FindGroup(std::string_view name) const;

  // Piece lifecycle.
  PieceId AddPiece(StateIndex state, std::optional<GridPosition> position,
                   Orientation orientation = Orientation::kNorth);
  PieceId AddPiece(std::string_view state, std::optional<Vec2> cell,
                   Orientation orientation = Orientation::kNorth);
  MoveResult MovePiece(PieceId id, Move move);
  Orientation TurnPiece(PieceId id, TurnSpec turn);
  StateChange SetState(PieceId id, StateIndex new_state);
  StateChange SetState(PieceId id, std::string_view new_state);
  void RemovePiece(PieceId id);
  PlaceResult PlacePiece(PieceId id, GridPosition position);

  // Piece access. Throws InvalidPiece for unknown ids.
  const Piece& piece(PieceId id) const;
  bool Contains(PieceId id) const { return id.valid() && id.value < pieces_.size(); }
  std::size_t num_pieces() const { return pieces_.size(); }
  std::span<const Piece> pieces() const { return pieces_; }
  // `cell` must be in bounds.
  PieceId PieceAt(Vec2 cell, LayerIndex layer) const {
    return occupancy_[Slot(cell, layer)];
  }
  PieceId PieceAt(const GridPosition& p) const { return PieceAt(p.cell(), p.layer); }
  bool IsInGroup(PieceId id, GroupIndex group) const;

  // Callbacks. Registration is only allowed before Start().
  void RegisterCallbacks(std::string_view state, CallbackTable table);
  void Start() { started_ = true; }
  bool started() const { return started_; }

  // Delivers a beam hit to the target's on_hit handler for `beam`.
  // Returns false when the target's state has no such handler.
  bool HitPiece(PieceId target, std::string_view beam, PieceId source);

  // Events raised by environment logic; drained once per tick.
  void RaiseEvent(std::string name, EventPayload payload = {});
  std::vector<EngineEvent> DrainEvents();
  std::span<const EngineEvent> pending_events() const { return events_; }

  // Contact-event log, off by default. When on, every contact event is
  // appended in generation order.
  void set_contact_logging(bool on) { log_contacts_ = on; }
  std::vector<ContactEvent> DrainContactLog();

  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }
  std::int64_t tick() const { return tick_; }

  // Portable FNV-1a digest over dimensions, tick, RNG state and every piece.
  std::uint64_t Hash() const;

  // Scheduler hooks (see scheduler.h).
  void CollectGroupMembers(GroupIndex group, std::vector<PieceId>& out) const;
  void DispatchUpdate(PieceId id, GroupIndex group);
  void AdvanceTick() { ++tick_; }

 private:
  static constexpr std::uint32_t kNoTag = 0xFFFFFFFFu;

  struct StateInfo {
    StateDescriptor desc;
    LayerIndex layer;
    std::vector<GroupIndex> groups;
    std::uint32_t contact_tag = kNoTag;  // interned desc.contact
  };

  struct Handlers {
    std::vector<std::pair<GroupIndex, UpdateHandler>> on_update;
    std::vector<std::pair<std::uint32_t, ContactHandler>> on_contact_enter;
    std::vector<std::pair<std::uint32_t, ContactHandler>> on_contact_leave;
    std::vector<std::pair<std::string, HitHandler>> on_hit;
    LifecycleHandler on_state_enter;
    LifecycleHandler on_state_exit;
    bool any_contact = false;
  };

  std::size_t Slot(Vec2 c, LayerIndex l) const {
    return (static_cast<std::size_t>(l.value) * height_ + c.y) * width_ + c.x;
  }
  Piece& MutablePiece(PieceId id);
  std::uint32_t InternTag(const std::string& tag);

  void AddMember(Piece& p);
  void RemoveMember(const Piece& p);

  // Appends contact events for `mover` entering/leaving cell `c` relative to
  // every co-located piece, in layer order.
  void CollectContacts(ContactEvent::Kind kind, PieceId mover, Vec2 c,
                       LayerIndex mover_layer, std::vector<ContactEvent>& out);
  void DispatchContacts(std::vector<ContactEvent>& events);
  void DispatchLifecycle(PieceId id, StateIndex state, bool enter);

  template <class Fn>
  void Invoke(PieceId id, const char* callback, Fn&& fn);

  int width_ = 0;
  int height_ = 0;
  std::vector<std::string> layer_names_;
  std::vector<StateInfo> states_;
  std::vector<std::string> group_names_;
  std::vector<std::string> contact_tags_;
  std::unordered_map<std::string, std::uint32_t> layer_lookup_;
  std::unordered_map<std::string, std::uint32_t> state_lookup_;
  std::unordered_map<std::string, std::uint32_t> group_lookup_;

  std::vector<Piece> pieces_;
  std::vector<std::uint32_t> member_slot_;           // per piece
  std::vector<std::vector<PieceId>> state_members_;  // per state
  std::vector<PieceId> occupancy_;                   // layer-major

  std::vector<Handlers> handlers_;  // per state
  bool started_ = false;
  int depth_ = 0;

  std::vector<EngineEvent> events_;
  bool log_contacts_ = false;
  std::vector<ContactEvent> contact_log_;

  Rng rng_;
  std::int64_t tick_ = 0;
};

}  // namespace gridlab

#endif  // GRIDLAB_WORLD_H_
