import json

from stoneinflation.tiling import builtin_system, system_to_dict

CUBE_DOC = {
    "name": "cube",
    "factor": "2",
    "dimension": 3,
    "tiles": [{"name": "t", "volume": "1"}],
    "rules": {"t": {"t": 8}},
}


def ms4_doc():
    return system_to_dict(builtin_system("ms4"))


def ms5_doc():
    return system_to_dict(builtin_system("ms5"))


def dumps(doc):
    return json.dumps(doc)
