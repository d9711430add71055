#!/usr/bin/env python3
"""Generates the bundled Lahaina road/init tables as JSON."""
import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "core", "data")

def road(table, rid, name, frm, to, length, lanes, speed, rclass, fmax,
         default_length=False, synthesized=False):
    row = {
        "table": table, "id": rid, "name": name, "from": frm, "to": to,
        "length_mi": length, "lanes": lanes, "speed_mph": speed,
        "road_class": rclass, "f_max_vphpl": fmax,
    }
    if default_length:
        row["default_length"] = True
    if synthesized:
        row["synthesized"] = True
    return row

roads = []

# Honopiilani Highway (Hwy30), two lanes throughout.
hwy = [
    ("Hwy30[0]", "(source)", "Prison St", 0.01, 35, 875, True),
    ("Hwy30[1]", "Prison St", "Dickenson St", 0.28, 35, 875, False),
    ("Hwy30[2]", "Dickenson St", "Lahainaluna Rd", 0.16, 35, 875, False),
    ("Hwy30[3]", "Lahainaluna Rd", "Papalaua St", 0.12, 40, 1000, False),
    ("Hwy30[4]", "Papalaua St", "Kenui St", 0.32, 40, 1000, False),
    ("Hwy30[5]", "Kenui St", "Keawe St", 0.17, 40, 1000, False),
    ("Hwy30[6]", "Keawe St", "Front St", 0.66, 40, 1000, False),
    ("Hwy30[7]", "Front St", "(exit)", 0.01, 40, 1000, True),
]
for rid, frm, to, ln, v, f, d in hwy:
    roads.append(road("hwy30", rid, "Hwy-30", frm, to, ln, 2, v, "Parkway", f,
                      default_length=d))

front = [
    ("Front[0]", "(source)", "Prison St", 0.01, True),
    ("Front[1]", "Prison St", "Canal St", 0.06, False),
    ("Front[2]", "Canal St", "Dickenson St", 0.14, False),
    ("Front[3]", "Dickenson St", "Lahainaluna Rd", 0.16, False),
    ("Front[4]", "Lahainaluna Rd", "Wahie Ln", 0.05, False),
    ("Front[5]", "Wahie Ln", "Papalaua St", 0.10, False),
    ("Front[6]", "Papalaua St", "Baker St", 0.17, False),
    ("Front[7]", "Baker St", "Kenui St", 0.17, False),
    ("Front[8]", "Kenui St", "Puunoa Pl", 0.10, False),
    ("Front[9]", "Puunoa Pl", "Hwy-30", 0.78, False),
]
for rid, frm, to, ln, d in front:
    roads.append(road("front", rid, "Front", frm, to, ln, 1, 20,
                      "Major Collector", 500, default_length=d))

wainee = [
    ("Wainee[0]", "(source)", "Prison St", 0.01, 300, True),
    ("Wainee[1]", "Prison St", "Hale St", 0.14, 300, False),
    ("Wainee[2]", "Hale St", "Dickenson St", 0.10, 300, False),
    ("Wainee[3]", "Dickenson St", "Panaewa St", 0.11, 300, False),
    ("Wainee[4]", "Panaewa St", "Lahainaluna Rd", 0.05, 300, False),
    ("Wainee[5]", "Lahainaluna Rd", "Papalaua St", 0.14, 400, False),
    ("Wainee[6]", "Papalaua St", "Baker St", 0.16, 400, False),
    ("Wainee[7]", "Baker St", "Kenui St", 0.16, 400, False),
]
for rid, frm, to, ln, f, d in wainee:
    cls = "Local Street" if f == 300 else "Minor Collector"
    roads.append(road("wainee", rid, "Waine'e", frm, to, ln, 1, 20, cls, f,
                      default_length=d))

west = [
    ("Prison[0]", "Prison", "Front St", "Wainee St", 0.16, 300, "Local Street"),
    ("Prison[1]", "Prison", "Wainee St", "Hwy-30", 0.08, 300, "Local Street"),
    ("Dicken[0]", "Dickenson", "Front St", "Luakini St", 0.05, 400, "Minor Collector"),
    ("Dicken[1]", "Dickenson", "Luakini St", "Wainee St", 0.09, 400, "Minor Collector"),
    ("Dicken[2]", "Dickenson", "Wainee St", "Hwy-30", 0.11, 400, "Minor Collector"),
    ("Papal[0]", "Papalaua", "Front St", "Wainee St", 0.15, 500, "Major Collector"),
    ("Papal[1]", "Papalaua", "Wainee St", "Hwy-30", 0.07, 500, "Major Collector"),
    ("Kenui[0]", "Kenui", "Front St", "Kahoma Vlg", 0.10, 400, "Minor Collector"),
    ("Kenui[1]", "Kenui", "Kahoma Vlg", "Wainee St", 0.08, 400, "Minor Collector"),
    ("Kenui[2]", "Kenui", "Wainee St", "Hwy-30", 0.02, 400, "Minor Collector"),
]
for rid, name, frm, to, ln, f, cls in west:
    roads.append(road("west_residential", rid, name, frm, to, ln, 1, 20, cls, f))

roads.append(road("keawe_lb", "Keawe[0]", "Keawe", "Hwy-30",
                  "Gateway Shopping Ctr", 0.10, 2, 25, "Major Collector", 550))
roads.append(road("keawe_lb", "Keawe[1]", "Keawe", "Gateway Shopping Ctr",
                  "Oil Rd", 0.09, 2, 25, "Major Collector", 550))
roads.append(road("keawe_lb", "LB[0]", "Lahaina Bypass", "(source)",
                  "Lahainaluna Rd", 0.01, 1, 30, "Arterial Parkway", 650,
                  default_length=True))
roads.append(road("keawe_lb", "LB[1]", "Lahaina Bypass", "Lahainaluna Rd",
                  "Oil Rd", 1.06, 1, 30, "Arterial Parkway", 650))

ll = [
    ("LL[0]", "Front St", "Wainee St", 0.14, 20, 500, False),
    ("LL[1]", "Wainee St", "Hwy-30", 0.09, 20, 500, False),
    ("LL[2]", "Hwy-30", "Kuhua St", 0.14, 20, 500, False),
    ("LL[3]", "Kuhua St", "Pauoa St", 0.05, 20, 500, False),
    ("LL[4]", "Pauoa St", "Kale St", 0.09, 20, 500, False),
    ("LL[5]", "Kale St", "Paunau St", 0.08, 20, 500, False),
    ("LL[6]", "Paunau St", "Kelawea St", 0.06, 20, 500, False),
    ("LL[7]", "Kelawea St", "Kalena St", 0.12, 30, 600, False),
    ("LL[8]", "Kalena St", "Dirt Road", 0.13, 30, 600, False),
    ("LL[9]", "Dirt Road", "Lahaina Bypass", 0.03, 30, 600, False),
    ("LL[10]", "Lahaina Bypass", "(source)", 0.01, 30, 600, True),
]
for rid, frm, to, ln, v, f, d in ll:
    roads.append(road("ll", rid, "Lahainaluna", frm, to, ln, 1, v,
                      "Major Collector", f, default_length=d))

sources = [
    ("Kuhua", "Kuhua", "Lahainaluna Rd", "(source)", 0.28),
    ("KomoMai", "Komo Mai", "(source)", "Keawe St Ext", 0.18),
    ("Pauoa", "Pauoa", "Lahainaluna Rd", "(source)", 0.18),
    ("Kale", "Kale", "Lahainaluna Rd", "(source)", 0.18),
    ("Paunau", "Paunau", "Lahainaluna Rd", "(source)", 0.18),
    ("Kelawea", "Kelawea", "Lahainaluna Rd", "(source)", 0.15),
    ("Kalena", "Kalena", "Lahainaluna Rd", "(source)", 0.18),
    ("DirtRoad", "Nondescript Dirt Road", "Lahainaluna Rd", "(source)", 0.25),
]
for rid, name, frm, to, ln in sources:
    roads.append(road("sources_east", rid, name, frm, to, ln, 1, 20,
                      "Local Street", 300))

# Stub segments not carried by the printed tables: short feeder entrances and
# the roads opened during the afternoon reconfiguration.
for rid, name, to in [
    ("Wahie", "Wahie", "Front St"),
    ("Baker", "Baker", "Front St"),
    ("KahomaLoop", "Kahoma Village Loop", "Kenui St"),
    ("Puunoa", "Puunoa", "Front St"),
    ("Canal", "Canal", "Front St"),
    ("Hale", "Hale", "Wainee St"),
    ("Luakini", "Luakini", "Dickenson St"),
    ("Panaewa", "Panaewa", "Wainee St"),
]:
    roads.append(road("sources_west", rid, name, "(source)", to, 0.01, 1, 20,
                      "Local Street", 300, default_length=True,
                      synthesized=True))

roads.append(road("pm_additions", "GatewayExit", "Gateway Shopping Ctr",
                  "Keawe St", "(shelter)", 0.01, 1, 25, "Major Collector", 550,
                  default_length=True, synthesized=True))
roads.append(road("pm_additions", "KeaweE", "Keawe (eastbound)", "Hwy-30",
                  "Gateway Shopping Ctr", 0.10, 2, 25, "Major Collector", 550,
                  synthesized=True))
roads.append(road("pm_additions", "Oil", "Oil Rd", "Lahainaluna Rd",
                  "Keawe St Ext", 0.40, 1, 20, "Local Street", 300,
                  synthesized=True))
roads.append(road("pm_additions", "FrontS_exit", "Front (southbound)",
                  "Prison St", "(exit)", 0.01, 1, 20, "Major Collector", 500,
                  default_length=True, synthesized=True))
roads.append(road("pm_additions", "WaineeS_exit", "Waine'e (southbound)",
                  "Prison St", "(exit)", 0.01, 1, 20, "Local Street", 300,
                  default_length=True, synthesized=True))
roads.append(road("pm_additions", "Hwy30S_exit", "Hwy-30 (southbound)",
                  "Prison St", "(exit)", 0.01, 2, 35, "Parkway", 875,
                  default_length=True, synthesized=True))
roads.append(road("pm_additions", "BypassS_exit", "Lahaina Bypass (southbound)",
                  "Lahainaluna Rd", "(exit)", 0.01, 1, 30, "Arterial Parkway",
                  650, default_length=True, synthesized=True))

with open(os.path.join(OUT, "lahaina_roads.json"), "w") as fh:
    json.dump({"rho_jam": 200, "roads": roads}, fh, indent=1)
    fh.write("\n")

# Initial-condition table for the first morning network.
init_rows = [
    ("Highway 30", "(source)", "Lahainaluna Rd", 19796, True, "B", 24.5, 0.178),
    ("Highway 30", "Lahainaluna Rd", "Kenui St", 19796, True, "B", 28, 0.178),
    ("Highway 30", "Kenui St", "Keawe St", 19796, True, "C", 20, 0.245),
    ("Highway 30", "Keawe St", "(exit)", 37300, True, "B", 28, 0.178),
    ("Front Street", "(source)", "Hwy-30", 6060, False, "D", 8, 0.300),
    ("Waine'e Street", "(source)", "Lahainaluna Rd", 0, False, "A", 20, 0.0),
    ("Waine'e Street", "Lahainaluna Rd", "Kenui St", 3939, False, "A", 20, 0.056),
    ("Prison Street", "Front St", "Hwy-30", 0, False, "A", 20, 0.0),
    ("Dickenson Street", "Front St", "Hwy-30", 3333, False, "A", 20, 0.047),
    ("Papalaua Street", "Front St", "Hwy-30", 3434, False, "A", 20, 0.049),
    ("Kenui Street", "Front St", "Hwy-30", 2652, False, "A", 20, 0.038),
    ("Keawe Street", "Hwy-30", "Gateway Shopping Ctr", 20196, True, "C", 12.5, 0.217),
    ("Keawe Street", "Gateway Shopping Ctr", "Oil Rd", 20196, True, "B", 17.5, 0.157),
    ("Keawe Street", "Oil Rd", "Lahaina Bypass", 20196, True, "C", 12.5, 0.217),
    ("Lahaina Bypass", "(source)", "Keawe St Ext", 16218, True, "B", 21, 0.154),
    ("LahainaLuna Road", "Front St", "Wainee St", 8585, False, "C", 10, 0.245),
    ("LahainaLuna Road", "Wainee St", "Kelawea St", 8585, True, "B", 14, 0.178),
    ("LahainaLuna Road", "Kelawea St", "(source)", 8585, True, "B", 21, 0.143),
]
rows = []
for name, frm, to, aadt, google, los, v0, rho0 in init_rows:
    rows.append({"name": name, "from": frm, "to": to, "aadt": aadt,
                 "google": google, "los": los, "v0_mph": v0, "rho0": rho0})

with open(os.path.join(OUT, "lahaina_init.json"), "w") as fh:
    json.dump({"alpha": {"A": 1.0, "B": 0.7, "C": 0.5, "D": 0.4, "E": 0.25},
               "rows": rows}, fh, indent=1)
    fh.write("\n")

print("wrote", len(roads), "road rows and", len(rows), "init rows")
