#include "gridlab/world.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <utility>

#include "gridlab/errors.h"
#include "gridlab/hash.h"

namespace gridlab {

namespace {

template <class Map>
std::optional<std::uint32_t> Lookup(const Map& map, std::string_view name) {
  auto it = map.find(std::string(name));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

struct DepthGuard {
  explicit DepthGuard(int& d) : depth(d) { ++depth; }
  ~DepthGuard() { --depth; }
  int& depth;
};

}  // namespace

void ValidatePayload(const EventPayload& payload) {
  auto check = [](double v, const std::string& key) {
    if (!std::isfinite(v)) {
      throw ConfigError("event payload key '" + key +
                        "' holds a non-finite number");
    }
  };
  for (const auto& [key, value] : payload) {
    if (const auto* d = std::get_if<double>(&value)) {
      check(*d, key);
    } else if (const auto* ds = std::get_if<std::vector<double>>(&value)) {
      for (double v : *ds) check(v, key);
    }
  }
}

World::World(int width, int height, std::span<const std::string> layers,
             std::span<const StateDescriptor> states, std::uint64_t seed)
    : width_(width), height_(height), rng_(seed) {
  if (width < 1 || height < 1) {
    throw ConfigError("world dimensions must be positive");
  }
  for (const auto& name : layers) {
    if (name.empty()) throw ConfigError("layer names must be non-empty");
    auto [it, inserted] = layer_lookup_.emplace(
        name, static_cast<std::uint32_t>(layer_names_.size()));
    if (!inserted) throw ConfigError("duplicate layer '" + name + "'");
    layer_names_.push_back(name);
  }
  for (const auto& desc : states) {
    if (desc.name.empty()) throw ConfigError("state names must be non-empty");
    auto layer = FindLayer(desc.layer);
    if (!layer) {
      throw ConfigError("state '" + desc.name + "' references unknown layer '" +
                        desc.layer + "'");
    }
    auto [it, inserted] = state_lookup_.emplace(
        desc.name, static_cast<std::uint32_t>(states_.size()));
    if (!inserted) throw ConfigError("duplicate state '" + desc.name + "'");

    StateInfo info{desc, *layer, {}, kNoTag};
    for (const auto& g : desc.groups) {
      auto [git, fresh] = group_lookup_.emplace(
          g, static_cast<std::uint32_t>(group_names_.size()));
      if (fresh) group_names_.push_back(g);
      GroupIndex gi(git->second);
      if (std::find(info.groups.begin(), info.groups.end(), gi) == info.groups.end()) {
        info.groups.push_back(gi);
      }
    }
    if (!desc.contact.empty()) info.contact_tag = InternTag(desc.contact);
    states_.push_back(std::move(info));
  }
  state_members_.resize(states_.size());
  handlers_.resize(states_.size());
  occupancy_.assign(layer_names_.size() * static_cast<std::size_t>(width) * height,
                    PieceId{});
}

std::uint32_t World::InternTag(const std::string& tag) {
  auto it = std::find(contact_tags_.begin(), contact_tags_.end(), tag);
  if (it != contact_tags_.end()) {
    return static_cast<std::uint32_t>(it - contact_tags_.begin());
  }
  contact_tags_.push_back(tag);
  return static_cast<std::uint32_t>(contact_tags_.size() - 1);
}

std::optional<LayerIndex> World::FindLayer(std::string_view name) const {
  if (auto v = Lookup(layer_lookup_, name)) return LayerIndex(*v);
  return std::nullopt;
}
std::optional<StateIndex> World::FindState(std::string_view name) const {
  if (auto v = Lookup(state_lookup_, name)) return StateIndex(*v);
  return std::nullopt;
}
std::optional<GroupIndex> World::FindGroup(std::string_view name) const {
  if (auto v = Lookup(group_lookup_, name)) return GroupIndex(*v);
  return std::nullopt;
}

LayerIndex World::Layer(std::string_view name) const {
  if (auto l = FindLayer(name)) return *l;
  throw ConfigError("unknown layer '" + std::string(name) + "'");
}
StateIndex World::State(std::string_view name) const {
  if (auto s = FindState(name)) return *s;
  throw ConfigError("unknown state '" + std::string(name) + "'");
}
GroupIndex World::Group(std::string_view name) const {
  if (auto g = FindGroup(name)) return *g;
  throw ConfigError("unknown group '" + std::string(name) + "'");
}

const Piece& World::piece(PieceId id) const {
  if (!Contains(id)) {
    throw InvalidPiece("unknown piece " + std::to_string(id.value));
  }
  return pieces_[id.value];
}

Piece& World::MutablePiece(PieceId id) {
  if (!Contains(id)) {
    throw InvalidPiece("unknown piece " + std::to_string(id.value));
  }
  return pieces_[id.value];
}

bool World::IsInGroup(PieceId id, GroupIndex group) const {
  const auto& groups = states_[piece(id).state.value].groups;
  return std::find(groups.begin(), groups.end(), group) != groups.end();
}

void World::AddMember(Piece& p) {
  auto& members = state_members_[p.state.value];
  member_slot_[p.id.value] = static_cast<std::uint32_t>(members.size());
  members.push_back(p.id);
}

void World::RemoveMember(const Piece& p) {
  auto& members = state_members_[p.state.value];
  const std::uint32_t slot = member_slot_[p.id.value];
  const PieceId last = members.back();
  members[slot] = last;
  member_slot_[last.value] = slot;
  members.pop_back();
}

template <class Fn>
void World::Invoke(PieceId id, const char* callback, Fn&& fn) {
  if (depth_ >= kMaxCallbackDepth) {
    throw TickError(id.value, callback, "callback depth limit exceeded");
  }
  DepthGuard guard(depth_);
  try {
    fn();
  } catch (const TickError&) {
    throw;
  } catch (const std::exception& e) {
    throw TickError(id.value, callback, e.what());
  }
}

void World::CollectContacts(ContactEvent::Kind kind, PieceId mover, Vec2 c,
                            LayerIndex mover_layer, std::vector<ContactEvent>& out) {
  const std::uint32_t mover_tag = states_[pieces_[mover.value].state.value].contact_tag;
  for (std::uint32_t l = 0; l < layer_names_.size(); ++l) {
    if (l == mover_layer.value) continue;
    const PieceId other = occupancy_[Slot(c, LayerIndex(l))];
    if (!other.valid()) continue;
    if (mover_tag != kNoTag) out.push_back({kind, other, mover, mover_tag});
    const std::uint32_t other_tag = states_[pieces_[other.value].state.value].contact_tag;
    if (other_tag != kNoTag) out.push_back({kind, mover, other, other_tag});
  }
}

void World::DispatchContacts(std::vector<ContactEvent>& events) {
  if (events.empty()) return;
  if (log_contacts_) {
    contact_log_.insert(contact_log_.end(), events.begin(), events.end());
  }
  for (const ContactEvent& ev : events) {
    const auto& h = handlers_[pieces_[ev.receiver.value].state.value];
    if (!h.any_contact) continue;
    const auto& table =
        ev.kind == ContactEvent::Kind::kEnter ? h.on_contact_enter : h.on_contact_leave;
    for (const auto& entry : table) {
      if (entry.first != ev.tag) continue;
      const auto& fn = entry.second;
      Invoke(ev.receiver,
             ev.kind == ContactEvent::Kind::kEnter ? "onContactEnter" : "onContactLeave",
             [&] { fn(*this, ev.receiver, ev.emitter); });
      break;
    }
  }
}

void World::DispatchLifecycle(PieceId id, StateIndex state, bool enter) {
  const auto& h = handlers_[state.value];
  const auto& fn = enter ? h.on_state_enter : h.on_state_exit;
  if (!fn) return;
  Invoke(id, enter ? "onStateEnter" : "onStateExit", [&] { fn(*this, id); });
}

PieceId World::AddPiece(StateIndex state, std::optional<GridPosition> position,
                        Orientation orientation) {
  if (!state.valid() || state.value >= states_.size()) {
    throw ConfigError("unknown state index");
  }
  if (position) {
    if (position->layer != states_[state.value].layer) {
      throw ConfigError("position layer does not match layer of state '" +
                        states_[state.value].desc.name + "'");
    }
    if (!InBounds(position->cell())) {
      throw PlacementBlocked("position outside the grid");
    }
    if (occupancy_[Slot(position->cell(), position->layer)].valid()) {
      throw PlacementBlocked("cell (" + std::to_string(position->x) + ", " +
                             std::to_string(position->y) + ", " +
                             layer_names_[position->layer.value] + ") is occupied");
    }
  }
  const PieceId id(static_cast<std::uint32_t>(pieces_.size()));
  pieces_.push_back(Piece{id, position, orientation, state});
  member_slot_.push_back(0);
  AddMember(pieces_.back());

  std::vector<ContactEvent> contacts;
  if (position) {
    occupancy_[Slot(position->cell(), position->layer)] = id;
    CollectContacts(ContactEvent::Kind::kEnter, id, position->cell(), position->layer,
                    contacts);
  }
  DispatchLifecycle(id, state, /*enter=*/true);
  DispatchContacts(contacts);
  return id;
}

PieceId World::AddPiece(std::string_view state, std::optional<Vec2> cell,
                        Orientation orientation) {
  const StateIndex s = State(state);
  std::optional<GridPosition> pos;
  if (cell) pos = GridPosition{cell->x, cell->y, states_[s.value].layer};
  return AddPiece(s, pos, orientation);
}

MoveResult World::MovePiece(PieceId id, Move move) {
  Piece& p = MutablePiece(id);
  if (!p.position) {
    throw InvalidPiece("piece " + std::to_string(id.value) + " is off the board");
  }
  const GridPosition from = *p.position;
  Vec2 offset;
  if (const auto* rel = std::get_if<RelativeMove>(&move)) {
    switch (*rel) {
      case RelativeMove::kForward: offset = ForwardOf(p.orientation); break;
      case RelativeMove::kBackward: offset = ForwardOf(Reverse(p.orientation)); break;
      case RelativeMove::kStrafeLeft: offset = ForwardOf(RotateLeft(p.orientation)); break;
      case RelativeMove::kStrafeRight: offset = RightOf(p.orientation); break;
    }
  } else {
    offset = std::get<Vec2>(move);
  }
  if (offset == Vec2{}) return {true, from};

  const Vec2 dest = from.cell() + offset;
  if (!InBounds(dest)) return {false, from};
  PieceId& target = occupancy_[Slot(dest, from.layer)];
  if (target.valid()) return {false, from};

  occupancy_[Slot(from.cell(), from.layer)] = PieceId{};
  target = id;
  std::vector<ContactEvent> contacts;
  CollectContacts(ContactEvent::Kind::kLeave, id, from.cell(), from.layer, contacts);
  p.position = GridPosition{dest.x, dest.y, from.layer};
  CollectContacts(ContactEvent::Kind::kEnter, id, dest, from.layer, contacts);
  const GridPosition result = *p.position;
  DispatchContacts(contacts);
  return {true, result};
}

Orientation World::TurnPiece(PieceId id, TurnSpec turn) {
  Piece& p = MutablePiece(id);
  if (const auto* t = std::get_if<Turn>(&turn)) {
    switch (*t) {
      case Turn::kLeft: p.orientation = RotateLeft(p.orientation); break;
      case Turn::kRight: p.orientation = RotateRight(p.orientation); break;
      case Turn::kAbout: p.orientation = Reverse(p.orientation); break;
    }
  } else {
    p.orientation = std::get<Orientation>(turn);
  }
  return p.orientation;
}

StateChange World::SetState(PieceId id, std::string_view new_state) {
  return SetState(id, State(new_state));
}

StateChange World::SetState(PieceId id, StateIndex new_state) {
  if (!new_state.valid() || new_state.value >= states_.size()) {
    throw ConfigError("unknown state index");
  }
  const Piece& p = piece(id);
  const StateIndex old_state = p.state;
  if (old_state == new_state) return StateChange::kChanged;
  const LayerIndex new_layer = states_[new_state.value].layer;
  auto blocked = [&](const Piece& q) {
    return q.position && new_layer != q.position->layer &&
           occupancy_[Slot(q.position->cell(), new_layer)].valid();
  };
  if (blocked(p)) return StateChange::kBlocked;

  DispatchLifecycle(id, old_state, /*enter=*/false);
  Piece& q = pieces_[id.value];
  // The exit handler may have re-stated or moved the piece.
  if (q.state != old_state) return StateChange::kChanged;
  if (blocked(q)) return StateChange::kBlocked;

  std::vector<ContactEvent> contacts;
  if (q.position) {
    const GridPosition from = *q.position;
    const std::uint32_t old_tag = states_[old_state.value].contact_tag;
    const std::uint32_t new_tag = states_[new_state.value].contact_tag;
    // A layer switch keeps the same co-located set (the target slot was
    // empty), so only a changed contact tag produces events.
    if (old_tag != new_tag) {
      for (std::uint32_t l = 0; l < layer_names_.size(); ++l) {
        if (l == from.layer.value || l == new_layer.value) continue;
        const PieceId other = occupancy_[Slot(from.cell(), LayerIndex(l))];
        if (!other.valid()) continue;
        if (old_tag != kNoTag) contacts.push_back({ContactEvent::Kind::kLeave, other, id, old_tag});
        if (new_tag != kNoTag) contacts.push_back({ContactEvent::Kind::kEnter, other, id, new_tag});
      }
    }
    if (new_layer != from.layer) {
      occupancy_[Slot(from.cell(), from.layer)] = PieceId{};
      occupancy_[Slot(from.cell(), new_layer)] = id;
      q.position->layer = new_layer;
    }
  }
  RemoveMember(q);
  q.state = new_state;
  AddMember(q);

  DispatchContacts(contacts);
  DispatchLifecycle(id, new_state, /*enter=*/true);
  return StateChange::kChanged;
}

void World::RemovePiece(PieceId id) {
  Piece& p = MutablePiece(id);
  if (!p.position) return;
  const GridPosition from = *p.position;
  std::vector<ContactEvent> contacts;
  CollectContacts(ContactEvent::Kind::kLeave, id, from.cell(), from.layer, contacts);
  occupancy_[Slot(from.cell(), from.layer)] = PieceId{};
  p.position.reset();
  DispatchContacts(contacts);
}

PlaceResult World::PlacePiece(PieceId id, GridPosition position) {
  Piece& p = MutablePiece(id);
  if (p.position) {
    throw InvalidPiece("piece " + std::to_string(id.value) + " is already on the board");
  }
  if (position.layer != states_[p.state.value].layer) {
    throw ConfigError("position layer does not match the piece's state layer");
  }
  if (!InBounds(position.cell())) return PlaceResult::kBlocked;
  PieceId& slot = occupancy_[Slot(position.cell(), position.layer)];
  if (slot.valid()) return PlaceResult::kBlocked;
  slot = id;
  p.position = position;
  std::vector<ContactEvent> contacts;
  CollectContacts(ContactEvent::Kind::kEnter, id, position.cell(), position.layer,
                  contacts);
  DispatchContacts(contacts);
  return PlaceResult::kPlaced;
}

void World::RegisterCallbacks(std::string_view state, CallbackTable table) {
  if (started_) throw ConfigError("callbacks must be registered before the world starts");
  if (depth_ > 0) throw ConfigError("callbacks cannot be registered from a callback");
  const StateIndex s = State(state);
  Handlers& h = handlers_[s.value];
  const std::string where = " for state '" + std::string(state) + "'";

  for (auto& [group, fn] : table.on_update) {
    const GroupIndex g = Group(group);
    const auto& member_of = states_[s.value].groups;
    if (std::find(member_of.begin(), member_of.end(), g) == member_of.end()) {
      throw ConfigError("state '" + std::string(state) + "' is not in group '" + group + "'");
    }
    for (const auto& existing : h.on_update) {
      if (existing.first == g) throw ConfigError("duplicate onUpdate(" + group + ")" + where);
    }
    h.on_update.emplace_back(g, std::move(fn));
  }
  auto add_contact = [&](auto& dest, auto& src, const char* what) {
    for (auto& [tag, fn] : src) {
      const std::uint32_t t = InternTag(tag);
      for (const auto& existing : dest) {
        if (existing.first == t) {
          throw ConfigError(std::string("duplicate ") + what + "(" + tag + ")" + where);
        }
      }
      dest.emplace_back(t, std::move(fn));
      h.any_contact = true;
    }
  };
  add_contact(h.on_contact_enter, table.on_contact_enter, "onContactEnter");
  add_contact(h.on_contact_leave, table.on_contact_leave, "onContactLeave");
  for (auto& [beam, fn] : table.on_hit) {
    for (const auto& existing : h.on_hit) {
      if (existing.first == beam) throw ConfigError("duplicate onHit(" + beam + ")" + where);
    }
    h.on_hit.emplace_back(beam, std::move(fn));
  }
  if (table.on_state_enter) {
    if (h.on_state_enter) throw ConfigError("duplicate onStateEnter" + where);
    h.on_state_enter = std::move(table.on_state_enter);
  }
  if (table.on_state_exit) {
    if (h.on_state_exit) throw ConfigError("duplicate onStateExit" + where);
    h.on_state_exit = std::move(table.on_state_exit);
  }
}

bool World::HitPiece(PieceId target, std::string_view beam, PieceId source) {
  const Piece& p = piece(target);
  const auto& h = handlers_[p.state.value];
  for (const auto& entry : h.on_hit) {
    if (entry.first != beam) continue;
    const auto& fn = entry.second;
    Invoke(target, "onHit", [&] { fn(*this, target, source); });
    return true;
  }
  return false;
}

void World::RaiseEvent(std::string name, EventPayload payload) {
  ValidatePayload(payload);
  events_.push_back(EngineEvent{std::move(name), std::move(payload), tick_});
}

std::vector<EngineEvent> World::DrainEvents() {
  std::vector<EngineEvent> out;
  out.swap(events_);
  return out;
}

std::vector<ContactEvent> World::DrainContactLog() {
  std::vector<ContactEvent> out;
  out.swap(contact_log_);
  return out;
}

void World::CollectGroupMembers(GroupIndex group, std::vector<PieceId>& out) const {
  out.clear();
  for (std::uint32_t s = 0; s < states_.size(); ++s) {
    const auto& groups = states_[s].groups;
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) continue;
    for (PieceId id : state_members_[s]) {
      if (pieces_[id.value].position) out.push_back(id);
    }
  }
}

void World::DispatchUpdate(PieceId id, GroupIndex group) {
  const Piece& p = pieces_[id.value];
  // Pieces that left the board or the group since the snapshot are skipped.
  if (!p.position) return;
  for (const auto& entry : handlers_[p.state.value].on_update) {
    if (entry.first != group) continue;
    const auto& fn = entry.second;
    Invoke(id, "onUpdate", [&] { fn(*this, id); });
    return;
  }
}

std::uint64_t World::Hash() const {
  Fnv1a h;
  h.I64(width_).I64(height_).I64(tick_);
  for (std::uint64_t w : rng_.state()) h.U64(w);
  h.U64(pieces_.size());
  for (const Piece& p : pieces_) {
    h.U64(p.id.value).U64(p.state.value).U64(static_cast<std::uint64_t>(p.orientation));
    if (p.position) {
      h.U64(1).I64(p.position->x).I64(p.position->y).U64(p.position->layer.value);
    } else {
      h.U64(0);
    }
  }
  return h.value();
}

}  // namespace gridlab
