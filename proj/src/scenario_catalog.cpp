#include "vtask/meta_gen.hpp"

namespace vtask {

// Phrases here are matched verbatim by the baseline translator, so none of
// them may contain a back-quote or the words reset/enable/clock.

std::span<const ScenarioPlace> scenario_places() {
  static const std::vector<ScenarioPlace> places = {
      {"house",
       {{"alarm detector triggered", "detectors", "are triggered"},
        {"window open", "windows", "are open"},
        {"smoke alarm tripped", "alarms", "are tripped"}},
       {{"light", "activates"}, {"siren", "sounds"}, {"buzzer", "sounds"}}},
      {"car",
       {{"door open", "doors", "are open"},
        {"seatbelt unfastened", "seatbelts", "are unfastened"},
        {"tire pressure low", "tires", "are low"}},
       {{"light", "illuminates"}, {"chime", "sounds"}, {"warning lamp", "illuminates"}}},
      {"vault door",
       {{"secret switch pressed", "switches", "are pressed"},
        {"key turned", "keys", "are turned"}},
       {{"lock", "opens"}, {"light", "illuminates"}}},
      {"factory",
       {{"machine overheating", "machines", "are overheating"},
        {"conveyor jammed", "conveyors", "are jammed"}},
       {{"alarm", "sounds"}, {"beacon", "flashes"}}},
      {"greenhouse",
       {{"soil moisture dry", "beds", "are dry"}, {"vent open", "vents", "are open"}},
       {{"pump", "starts"}, {"fan", "spins"}}},
      {"train",
       {{"carriage door open", "doors", "are open"},
        {"brake engaged", "brakes", "are engaged"}},
       {{"indicator", "lights up"}, {"horn", "sounds"}}},
  };
  return places;
}

std::span<const RegisterSystem> register_systems() {
  static const std::vector<RegisterSystem> systems = {
      {"a call button (e.g., in an airplane or hospital)", "call button", "pressed",
       "call light", "turn on", "turn off"},
      {"an alarm system", "panic mode", "selected", "alarm system", "activate",
       "deactivate"},
      {"a doorbell", "bell push", "pressed", "chime light", "turn on", "turn off"},
      {"a parking sensor", "proximity detector", "triggered", "warning beeper",
       "start beeping", "stop beeping"},
      {"a fire alarm panel", "smoke detector", "tripped", "alarm siren", "sound",
       "go quiet"},
  };
  return systems;
}

std::span<const CancelDevice> cancel_devices() {
  static const std::vector<CancelDevice> devices = {
      {"cancel button", "pressed"},
      {"cancel button", "selected"},
      {"clear switch", "flipped"},
      {"acknowledge key", "turned"},
      {"stop button", "pushed"},
  };
  return devices;
}

}  // namespace vtask
