"""
kforms - Identity Reports

Result dictionaries shared by every verify_* routine. A report never raises
on a failed identity; it records the case and keeps going.

Features:
    - One dict per identity: valid flag, case count, failure list
    - Residuals stored as strings (exact) or floats (numeric) for JSON output
    - Merging of many identity reports into a suite summary
"""

import logging

import config

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

# Failure lists are capped so a systematic error cannot flood the JSON report
MAX_RECORDED_FAILURES = 20


def new_report(identity: str) -> dict:
    return {
        'identity': identity,
        'valid': True,
        'cases': 0,
        'failures': [],
    }


def record_case(report: dict, passed: bool, inputs, residual=None) -> bool:
    """
    Record one checked case.

    Args:
        report: dict from new_report
        passed: whether the identity held
        inputs: JSON-friendly description of the case
        residual: size or printed form of the discrepancy

    Returns:
        The passed flag, for chaining in loops
    """
    report['cases'] += 1
    if passed:
        return True
    report['valid'] = False
    if len(report['failures']) < MAX_RECORDED_FAILURES:
        report['failures'].append({
            'identity': report['identity'],
            'inputs': inputs,
            'residual': residual,
        })
    logger.warning(f"{report['identity']} failed on {inputs}: residual {residual}")
    return False


def numeric_residual(value) -> float:
    """Absolute size of a numeric discrepancy, rounded for stable JSON."""
    return float(f"{abs(complex(value)):.6e}")


def merge_reports(name: str, reports: list[dict]) -> dict:
    """Combine identity reports into one suite summary."""
    failures = []
    for report in reports:
        failures.extend(report['failures'])
    return {
        'suite': name,
        'valid': all(report['valid'] for report in reports),
        'cases': sum(report['cases'] for report in reports),
        'identities': [
            {'identity': r['identity'], 'valid': r['valid'], 'cases': r['cases']}
            for r in reports
        ],
        'failures': failures,
    }
