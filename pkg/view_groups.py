groups = [
    {
        "views": [
            {
                "label": "Introduction",
                "help": "Overview of the pages in this app.",
                "page": "views/book_intro.py",
                "icon": ":material/info:",
            },
        ],
    },
    {
        "title": "Quivers",
        "views": [
            {
                "label": "Classify",
                "help": "Decide whether a mutation class is bounded.",
                "page": "views/quiver_classify.py",
                "icon": ":material/rule:",
            },
            {
                "label": "Mutate",
                "help": "Apply a mutation sequence and inspect the trajectory.",
                "page": "views/quiver_mutate.py",
                "icon": ":material/swap_horiz:",
            },
            {
                "label": "Divergence certificates",
                "help": "Mutation sequences with certified growth for unbounded classes.",
                "page": "views/divergence_witness.py",
                "icon": ":material/trending_up:",
            },
        ],
    },
    {
        "title": "Orbits",
        "views": [
            {
                "label": "Orbit explorer",
                "help": "Random and published mutation orbits with CSV, JSON and SVG export.",
                "page": "views/orbit_explorer.py",
                "icon": ":material/scatter_plot:",
            },
        ],
    },
    {
        "title": "Geometry",
        "views": [
            {
                "label": "Realizations",
                "help": "Points and lines whose rotations and reflections mirror mutation.",
                "page": "views/geometry_realizations.py",
                "icon": ":material/change_history:",
            },
        ],
    },
]
