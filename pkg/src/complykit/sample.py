"""Bundled sample catalog: securing remote access to industrial equipment.

Six requirements are mapped against three standard families. The first group
of Identification & Authentication carries real control identifiers; every
other group uses sequentially numbered synthetic ids (S-prefixed, titled as
placeholders) because full mappings belong to the catalog owner, not to a
sample. Group sizes are chosen so that Identification & Authentication has by
far the most controls, the NIST family contributes the most controls for most
requirements, and Encryption has very few, which is the texture a real
mapping of this use case produces.
"""

from __future__ import annotations

from importlib import resources

from .catalog import Catalog, Control, ControlGroup, Requirement, StandardRef

SAMPLE_CATALOG_NAME = "industry40-remote-access"

_STANDARDS = (
    StandardRef(id="IEC-62443-3-3", label="IEC 62443-3-3", id_prefix="IEC"),
    StandardRef(id="ISO-27000", label="ISO/IEC 27000 series", id_prefix="ISO-02"),
    StandardRef(id="NIST-SP", label="NIST SP 800-53 / 800-82", id_prefix="NIST-53"),
)

_IEC = "IEC-62443-3-3"
_ISO = "ISO-27000"
_NIST = "NIST-SP"

_REQUIREMENTS = (
    Requirement(
        id="IA",
        name="Identification & Authentication",
        description=(
            "Every actor on the system, human or machine, is individually "
            "identified and its identity verified before any access is granted. "
            "Relies on Encryption for credential and session protection."
        ),
        depends_on=("EC",),
    ),
    Requirement(
        id="DI",
        name="Data Integrity",
        description="Stored and transmitted data cannot be altered without detection.",
    ),
    Requirement(
        id="DC",
        name="Data Confidentiality",
        description="Data is disclosed only to parties authorized to see it.",
    ),
    Requirement(
        id="EC",
        name="Encryption",
        description=(
            "Cryptographic protection is available and correctly applied wherever "
            "confidentiality or integrity demands it."
        ),
    ),
    Requirement(
        id="AV",
        name="Availability",
        description=(
            "The system and its security functions stay usable when needed, "
            "including under denial-of-service conditions."
        ),
    ),
    Requirement(
        id="CC",
        name="Communication Channels",
        description="Network paths between locations are segmented, authenticated and protected end to end.",
    ),
)

# Real identifiers for the first Identification & Authentication group:
# 6 IEC + 5 ISO + 8 NIST = 19 controls.
_IA_GROUP1 = (
    Control("IEC-1", _IEC, "Human user identification and authentication"),
    Control("IEC-2", _IEC, "Software process and device identification and authentication"),
    Control("IEC-3", _IEC, "Account management"),
    Control("IEC-4", _IEC, "Identifier management"),
    Control("IEC-6", _IEC, "Wireless access management"),
    Control("IEC-8", _IEC, "Strength of public key-based authentication"),
    Control("ISO-02-4", _ISO, "Access control policy"),
    Control("ISO-02-5", _ISO, "Access to networks and network services"),
    Control("ISO-02-6", _ISO, "User registration and de-registration"),
    Control("ISO-02-8", _ISO, "Management of secret authentication information"),
    Control("ISO-02-10", _ISO, "Review of user access rights"),
    Control("NIST-53-1", _NIST, "Access control policy and procedures"),
    Control("NIST-53-2", _NIST, "Account management"),
    Control("NIST-53-4", _NIST, "Information flow enforcement"),
    Control("NIST-53-5", _NIST, "Separation of duties"),
    Control("NIST-53-18", _NIST, "Least privilege"),
    Control("NIST-53-22", _NIST, "Publicly accessible content restrictions"),
    Control("NIST-53-23", _NIST, "Remote access authorization"),
    Control("NIST-53-31", _NIST, "Identification and authentication procedures"),
)

# Remaining groups: (requirement, group_id, per-standard synthetic counts, guidance).
# Counts are (IEC, ISO, NIST). Group 1 of IA is handled above.
_SYNTHETIC_GROUPS = (
    (
        "IA",
        2,
        (4, 5, 8),
        "Machine-to-machine authentication: device identities, service accounts, "
        "and key-based peer verification between gateway, broker, and portal.",
    ),
    (
        "IA",
        3,
        (1, 1, 3),
        "Session control: automatic lock, re-authentication after idle timeout, "
        "and limits on concurrent sessions.",
    ),
    (
        "DI",
        1,
        (2, 2, 4),
        "Integrity of data in transit: message authentication codes or signatures "
        "on every channel crossing a trust boundary.",
    ),
    (
        "DI",
        2,
        (1, 1, 4),
        "Integrity of stored data: tamper-evident storage, checksums, and verified backups.",
    ),
    ("DI", 3, (1, 1, 1), "Input validation at system boundaries."),
    (
        "DC",
        1,
        (3, 3, 4),
        "Confidentiality of transmitted data: channel encryption and key negotiation "
        "strong enough for the data classification involved.",
    ),
    (
        "DC",
        2,
        (1, 1, 2),
        "Confidentiality at rest: encrypted volumes or databases for captured "
        "measurements and credentials.",
    ),
    ("EC", 1, (1, 1, 1), "Approved algorithms and key lengths; no proprietary ciphers."),
    ("EC", 2, (1, 0, 1), "Key lifecycle management: generation, rotation, and revocation."),
    (
        "AV",
        1,
        (4, 2, 3),
        "Resilience of the remote path: redundancy, failover, and degradation "
        "behavior of broker and gateway under load.",
    ),
    ("AV", 2, (2, 1, 2), "Denial-of-service resistance at the network edge."),
    ("AV", 3, (1, 0, 1), "Recovery: documented restore procedure and tested backups."),
    (
        "CC",
        1,
        (2, 2, 3),
        "Channel segmentation: the device network is reachable only through the "
        "gateway, with no direct inbound routes.",
    ),
    (
        "CC",
        2,
        (1, 1, 2),
        "Boundary protection devices: firewall rules, protocol allow-lists, and "
        "logging at zone transitions.",
    ),
)

_IA_GROUP1_GUIDANCE = (
    "Account and access management for human users: individual accounts, "
    "credential strength rules, least privilege, and periodic review of granted "
    "rights. Check that the solution enforces unified account policies across "
    "all components, supports strong authenticators (passwords combined with "
    "tokens or certificates), and can group accounts by role."
)


def sample_catalog() -> Catalog:
    """Construct the sample catalog; the bundled JSON file is its serialization."""
    controls: list[Control] = list(_IA_GROUP1)
    groups: list[ControlGroup] = [
        ControlGroup(
            requirement="IA",
            group_id=1,
            controls=tuple(c.id for c in _IA_GROUP1),
            assessment_guidance=_IA_GROUP1_GUIDANCE,
        )
    ]

    counters = {_IEC: 0, _ISO: 0, _NIST: 0}
    prefixes = {_IEC: "IEC-S", _ISO: "ISO-02-S", _NIST: "NIST-53-S"}

    def synth(standard: str) -> Control:
        counters[standard] += 1
        return Control(
            id=f"{prefixes[standard]}{counters[standard]}",
            standard=standard,
            title="Synthetic placeholder control",
        )

    for requirement, group_id, (n_iec, n_iso, n_nist), guidance in _SYNTHETIC_GROUPS:
        members: list[Control] = []
        members += [synth(_IEC) for _ in range(n_iec)]
        members += [synth(_ISO) for _ in range(n_iso)]
        members += [synth(_NIST) for _ in range(n_nist)]
        controls.extend(members)
        groups.append(
            ControlGroup(
                requirement=requirement,
                group_id=group_id,
                controls=tuple(c.id for c in members),
                assessment_guidance=guidance,
            )
        )

    return Catalog(
        name=SAMPLE_CATALOG_NAME,
        standards=_STANDARDS,
        requirements=_REQUIREMENTS,
        controls=tuple(controls),
        groups=tuple(groups),
    )


def sample_catalog_bytes() -> bytes:
    """The shipped sample catalog file, byte for byte."""
    return resources.files("complykit").joinpath("data/sample_catalog.json").read_bytes()
