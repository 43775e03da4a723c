// All user-facing copy in one place. The interface is Dutch; other languages
// can be added by swapping this table.

export const NL = {
  appName: "Normzaak",
  login: "Inloggen",
  register: "Registreren",
  logout: "Uitloggen",
  username: "Gebruikersnaam",
  password: "Wachtwoord",
  loginFailed: "Ongeldige inloggegevens.",
  registerFailed: "Registreren mislukt: naam is al in gebruik.",

  navHome: "Home",
  navCases: "Zaken",
  navSimulation: "Simulatie",
  newCase: "Nieuwe zaak",

  ongoingCases: "Overzicht lopende zaken",
  openActions: "Openstaande acties",
  openActionsHint:
    "Alleen zaken waarin de volgende stap bij u ligt; zaken die wachten op bericht van een ander staan hier niet tussen.",
  sources: "Bronnen",
  addSource: "Bron toevoegen",
  emptyCases: "Geen lopende zaken.",
  emptyActions: "Geen openstaande acties.",
  emptySources: "Nog geen bronnen.",

  colName: "Naam",
  colStatus: "Status",
  colTerm: "Termijn",
  colType: "Type",
  colAction: "Actie",
  colModified: "Gewijzigd op",
  colOpen: "Open",
  open: "Open",
  overdue: "verlopen",

  statusInBehandeling: "In behandeling",
  statusWachten: "Wachten op bericht",
  statusAfgerond: "Afgerond",

  clientName: "Naam klant",
  clientKind: "Soort klant",
  kindCivilian: "Burger",
  kindOrganisation: "Organisatie",
  kindGovernment: "Overheid",
  caseType: "Type zaak",
  createdOn: "Aanmaakdatum",
  decisionTerm: "Beslistermijn",
  notes: "Notities",
  lastModified: "Laatst gewijzigd",
  questionsHeader: "Vragen voor het model",
  unknownOption: "Niet bekend",
  yes: "Ja",
  no: "Nee",
  next: "Volgende",
  save: "Opslaan",
  cancel: "Annuleren",
  edit: "Bewerken",
  fillRequired: "Vul de gemarkeerde velden in.",

  completed: "Afgerond",
  followUp: "Vervolg",
  normativeStatus: "Normatieve status",
  relevantSources: "Relevante bronnen",
  executeAction: "Uitvoeren",
  executedOn: "Uitgevoerd op",
  motivation: "Motivatie",
  motivationRequired:
    "Deze actie is niet (of nog niet) toegestaan. Geef een motivatie om toch uit te voeren.",
  confirmExecute: "Toch uitvoeren",
  violationSign: "⚠",
  violationHeader: "Schending",
  whyNotAllowed: "Waarom",
  changed: "gewijzigd",
  statusChangedHint: "De normatieve status van gemarkeerde acties is zojuist veranderd.",
  amount: "Toekenningsbedrag",
  outcome: "Besluit",

  searchPlaceholder: "Zoek op naam…",
  filterFrom: "Termijn van",
  filterTo: "tot en met",
  emptyTable: "Geen zaken gevonden.",

  simulation: "Simulatie",
  scenario: "Scenario",
  newScenario: "Nieuw scenario",
  scenarioFromCase: "Vanuit zaak (nummer, leeg = blanco)",
  scenarioLabel: "Naam scenario",
  create: "Aanmaken",
  rules: "Regels",
  addVersion: "Versie toevoegen",
  editRule: "Bewerken",
  deactivateAll: "Deactiveer alles",
  activateAll: "Activeer alles",
  active: "actief",
  inactive: "inactief",
  version: "versie",
  depth: "Diepte",
  rebuild: "Boom verversen",
  treeHeader: "Mogelijke vervolgstappen",
  detailsHeader: "Details geselecteerd pad",
  noSelection: "Klik op een stap in de boom voor uitleg.",
  applicableVersions: "Toegepaste regelversies",
  clauses: "Voorwaarden",
  ruleSaved: "Versie opgeslagen.",
  collapse: "Inklappen",
  expand: "Uitklappen",
};

export const STATUS_LABELS: Record<string, string> = {
  toegestaan: "Toegestaan",
  niet_toegestaan: "NIET toegestaan",
  onbestemd: "Onbestemd",
};

export const CASE_STATUS_LABELS: Record<string, string> = {
  in_behandeling: NL.statusInBehandeling,
  wachten_op_bericht: NL.statusWachten,
  afgerond: NL.statusAfgerond,
};

export const OUTCOME_LABELS: Record<string, string> = {
  approved: "Toegekend",
  denied: "Afgewezen",
  "not-taken-into-account": "Niet in behandeling genomen",
};
