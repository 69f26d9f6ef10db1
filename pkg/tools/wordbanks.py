"""Word pools for the synthetic fixture corpus.

Everything here is shared vocabulary; the class-discriminating signal
lives in the rate tables of make_fixture_corpus.StyleProfile, not in
these lists.
"""

MALE_NAMES = [
    "Edward", "Arthur", "Henry", "Charles", "Gerald", "Rupert", "Cecil",
    "Hugh", "Walter", "Frederick", "Basil", "Roger", "Julian", "Ambrose",
    "Victor", "Lionel", "Percy", "Clement", "Oswald", "Felix", "Maurice",
    "Sidney", "Norman", "Bertram", "Wilfred", "Horace", "Stanley", "Gilbert",
]

FEMALE_NAMES = [
    "Margaret", "Dorothy", "Evelyn", "Cynthia", "Beatrice", "Gwendolen",
    "Prudence", "Agnes", "Violet", "Cicely", "Muriel", "Harriet", "Phyllis",
    "Constance", "Isabel", "Rosamund", "Eleanor", "Winifred", "Marjorie",
    "Sybil", "Edith", "Iris", "Gladys", "Vera", "Lucille", "Millicent",
]

SURNAMES = [
    "Standish", "Ravenscroft", "Medhurst", "Amberley", "Carfax", "Doyle",
    "Hartington", "Pemberton", "Quill", "Ashby", "Netherfield", "Oakes",
    "Braithwaite", "Somers", "Trevelyan", "Underhay", "Vane", "Wychwood",
    "Yardley", "Allerton", "Blakeney", "Chudleigh", "Dunmore", "Eversleigh",
    "Farquhar", "Gorringe", "Haverford", "Ingles", "Jessop", "Kettering",
    "Lacey", "Maitland", "Norreys", "Ormsby", "Pagett", "Quentin", "Rycroft",
    "Saltmarsh", "Tredwell", "Uffington", "Venning", "Wainwright", "Frobisher",
    "Goodfellow", "Hazelmere", "Illingworth", "Jevons", "Knatchbull",
    "Lydgate", "Marchmont",
]

TITLES = ["Inspector", "Doctor", "Colonel", "Professor", "Sergeant",
          "Captain", "Major", "Canon", "Sir", "Lady", "Miss", "Mr", "Mrs",
          "Constable", "Superintendent"]

HOUSES = [
    "Greystones", "Fernly Court", "Marsden Hall", "The Priory", "Stonegate",
    "Hazelwood House", "The Grange", "Ravenswick", "Clover End", "Longmeadow",
    "Thorncliffe", "The Hollies", "Abbotsmead", "Wintersgate", "Larchwood",
]

VILLAGES = [
    "Kings Norton", "Little Pemberton", "Market Waverley", "Steeple Carford",
    "Upper Wendover", "Brackenfield", "Stoke Amberley", "Nether Mallow",
    "Crowsmere", "Dunsley", "Farthingbridge", "Gorsley Heath", "Hartfield",
    "Millbrook", "Ottersleigh",
]

ROOMS = [
    "library", "study", "drawing-room", "morning-room", "conservatory",
    "billiard-room", "gallery", "hall", "terrace", "garden", "orchard",
    "summer-house", "kitchen garden", "stable yard", "rose garden",
    "smoking-room", "dining-room", "landing", "cloakroom", "vestibule",
    "shrubbery", "gun-room", "pantry", "scullery", "boathouse",
]

OBJECTS = [
    "letter", "revolver", "candlestick", "telegram", "ledger", "locket",
    "decanter", "dossier", "timetable", "cigarette-case", "latchkey",
    "bracelet", "manuscript", "passport", "banknote", "envelope", "diary",
    "photograph", "will", "cheque", "visiting-card", "handkerchief",
    "paper-knife", "despatch-box", "tumbler", "inkstand", "blotter",
    "railway ticket", "sealing-wax", "cipher", "pocket-book", "snuff-box",
    "cuff-link", "hatpin", "parasol", "walking-stick", "field-glasses",
    "muffler", "typewriter", "cablegram", "postcard", "receipt", "map",
    "key-ring", "spectacle-case", "brooch", "carving-knife", "medicine bottle",
    "coffee-cup", "chess-board", "account book",
]

ABSTRACT = [
    "alibi", "motive", "inquest", "testimony", "inheritance", "blackmail",
    "disappearance", "confession", "suspicion", "coincidence", "scandal",
    "forgery", "engagement", "quarrel", "conspiracy", "deception",
    "bankruptcy", "reputation", "identity", "whereabouts", "evidence",
    "verdict", "arrest", "pursuit", "disguise", "ransom", "legacy",
    "correspondence", "appointment", "warrant",
]

PROFESSIONS = [
    "butler", "housekeeper", "gardener", "chauffeur", "parlourmaid",
    "solicitor", "doctor", "vicar", "stationmaster", "innkeeper",
    "secretary", "valet", "governess", "magistrate", "coroner",
    "bank manager", "chemist", "postmistress", "gamekeeper", "cook",
]

ADJECTIVES = [
    "curious", "pale", "grim", "shabby", "handsome", "faded", "narrow",
    "heavy", "silent", "crooked", "distant", "uneasy", "weathered",
    "polished", "dusty", "brisk", "sombre", "slender", "stout", "anxious",
    "cheerful", "obstinate", "wary", "genial", "haggard", "trim",
    "threadbare", "imposing", "modest", "sullen", "alert", "frail",
    "ruddy", "gaunt", "elderly", "youthful", "respectable", "singular",
    "melancholy", "abrupt",
]

VERBS_PAST = [
    "crossed", "examined", "entered", "studied", "followed", "watched",
    "questioned", "searched", "discovered", "unlocked", "opened", "closed",
    "folded", "pocketed", "produced", "inspected", "traced", "visited",
    "summoned", "dismissed", "interrupted", "recognised", "suspected",
    "recalled", "considered", "approached", "departed", "returned",
    "lingered", "hesitated", "hurried", "paused", "frowned", "nodded",
    "shrugged", "glanced", "listened", "waited", "wandered", "climbed",
]

WEATHER = [
    "a thin rain was falling", "the fog had thickened", "the morning was cold",
    "a sharp wind came off the downs", "the afternoon light was failing",
    "the sky threatened thunder", "frost silvered the lawn",
    "the heat lay heavy on the lanes", "a pale sun broke through",
    "drizzle blurred the windows", "the evening had turned chill",
    "mist hung over the river",
]

TIME_PHRASES = [
    "shortly after breakfast", "towards noon", "at half-past four",
    "before the gong sounded", "late in the evening", "on the following day",
    "within the hour", "just before dawn", "after the inquest",
    "on Tuesday last", "some weeks earlier", "by the morning post",
    "at a quarter to nine", "during the small hours", "after luncheon",
    "on the eve of the wedding", "the previous autumn", "that same night",
]

LONGTAIL = [
    "antimacassar", "portmanteau", "charabanc", "gaiters", "pince-nez",
    "escritoire", "aspidistra", "barouche", "bromide", "chloroform",
    "cretonne", "davenport", "epergne", "fender", "gasogene", "hansom",
    "ottoman", "pelisse", "salver", "tantalus", "wainscot", "armoire",
    "bureau", "chiffonier", "credenza", "settee", "sideboard", "valise",
    "verandah", "gazebo", "pergola", "trellis", "balustrade", "parapet",
    "turret", "gable", "eaves", "lintel", "mullion", "cornice",
    "vestry", "lychgate", "belfry", "cloister", "presbytery", "rectory",
    "curate", "sexton", "verger", "beadle", "almoner", "apothecary",
    "haberdasher", "ironmonger", "ostler", "wheelwright", "cooper",
    "farrier", "tinker", "drover", "poacher", "bailiff", "steward",
    "footman", "scullery-maid", "charwoman", "lamplighter", "crossing-sweeper",
    "costermonger", "publican", "tobacconist", "pawnbroker", "moneylender",
    "actuary", "notary", "barrister", "proctor", "assizes", "quarter-sessions",
    "recognizance", "affidavit", "codicil", "probate", "conveyance",
    "indenture", "annuity", "consols", "debenture", "sovereigns", "guineas",
    "farthing", "sixpence", "shilling", "half-crown", "florin", "threepence",
    "brougham", "landau", "phaeton", "dogcart", "governess-cart", "trap",
    "omnibus", "tramcar", "funicular", "paddle-steamer", "packet-boat",
    "dreadnought", "zeppelin", "aerodrome", "wireless", "gramophone",
    "phonograph", "stereoscope", "magic-lantern", "kinematograph",
    "typewriting", "shorthand", "blotting-paper", "foolscap", "vellum",
    "parchment", "sealing", "quill", "nib", "inkwell",
    "marcella", "organdie", "taffeta", "crepe", "serge", "tweed", "worsted",
    "gabardine", "astrakhan", "chenille", "damask", "brocade", "chintz",
    "muslin", "cambric", "lawn", "voile", "georgette", "shantung", "pongee",
    "quinine", "laudanum", "smelling-salts", "liniment", "poultice",
    "tincture", "digitalis", "strychnine", "arsenic", "veronal", "morphia",
    "carbolic", "iodine", "camphor", "eucalyptus", "wintergreen",
    "kedgeree", "devilled", "galantine", "consomme", "blancmange", "trifle",
    "junket", "syllabub", "marrow", "quince", "greengage", "damson",
    "gooseberry", "redcurrant", "sloe", "crabapple", "medlar", "mulberry",
    "partridge", "pheasant", "woodcock", "grouse", "plover", "snipe",
    "mallard", "teal", "widgeon", "corncrake", "nightjar", "yellowhammer",
    "chaffinch", "bullfinch", "goldcrest", "wheatear", "whinchat", "dunnock",
    "foxglove", "harebell", "campion", "stitchwort", "meadowsweet",
    "loosestrife", "toadflax", "scabious", "knapweed", "tormentil",
    "eyebright", "speedwell", "celandine", "coltsfoot", "mayweed",
]


_SURNAME_PREFIXES = [
    "Ash", "Brack", "Carf", "Dun", "Ever", "Fen", "Gor", "Hart", "Lang",
    "Mel", "Nor", "Oak", "Pem", "Rad", "Sled", "Thorn", "Wether", "Whit",
    "Winter", "Wool", "Bel", "Cran", "Dray", "Els", "Fair", "Grim", "Hale",
    "Ket", "Lock", "Mort",
]
_SURNAME_SUFFIXES = [
    "by", "bridge", "bourne", "combe", "cott", "dale", "field", "ford",
    "gate", "ham", "hurst", "leigh", "mere", "more", "shaw", "stead",
    "ton", "well", "wick", "worth",
]

# incidental characters: a large pool of plausible compound surnames,
# disjoint from the principal cast pool
MINOR_SURNAMES = sorted(
    p + s for p in _SURNAME_PREFIXES for s in _SURNAME_SUFFIXES
    if (p + s) not in set(SURNAMES))
