# corpus_worker.py

import logging
import os
import queue
import sys

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import WORKER_TIMEOUT_S
from src.acceptance import run_job

logger = logging.getLogger(__name__)


def run_battery_job(key, kind, param, seed):
    """
    Run one battery job. An exception becomes a single failed record carrying
    the error type and message.
    """
    try:
        return run_job(kind, param, seed)
    except Exception as e:
        logger.exception(f"Battery job {key} raised")
        return [{"subject": key, "check": "job completed", "ok": False,
                 "detail": f"{type(e).__name__}: {e}"}]


def corpus_worker(job_queue, result_queue, stop_event, seed, debug_mode=False):
    """
    Worker function (process) that pulls battery jobs from the queue and runs them.
    Results go back as (key, records) so the parent can sort them by key.
    """
    if debug_mode:
        logging.basicConfig(level=logging.DEBUG, format="[%(levelname)s] %(message)s")

    while True:
        try:
            # drain quickly once the parent has signalled stop
            timeout = WORKER_TIMEOUT_S / 2 if stop_event.is_set() else WORKER_TIMEOUT_S
            key, kind, param = job_queue.get(timeout=timeout)
        except queue.Empty:
            # stop only after the queue has run dry
            if stop_event.is_set():
                break
            continue

        if debug_mode:
            logger.debug(f"[CORPUS WORKER] Processing {key}")
        records = run_battery_job(key, kind, param, seed)
        result_queue.put((key, records))
        if debug_mode:
            failed = sum(not r["ok"] for r in records)
            logger.debug(f"[CORPUS WORKER] Finished {key}: {len(records)} checks, {failed} failed")

    if debug_mode:
        logger.debug("[CORPUS WORKER] Received stop signal, exiting")
