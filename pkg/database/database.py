import logging
import sqlite3
from sqlite3 import Error

import pandas as pd

import config

logger = logging.getLogger(__name__)

COLUMNS = ["id", "timestamp", "command", "result", "raw_args"]
ALLOWED_SORT_COLUMNS = ["id", "timestamp", "command", "result"]


def create_connection(db_file=None):
    """ create a database connection to the SQLite database specified by db_file """
    conn = None
    try:
        conn = sqlite3.connect(db_file or config.DB_FILE)
        return conn
    except Error as e:
        logger.error("cannot open history database: %s", e)
    return conn


def create_table(conn):
    """ create the runs table if it does not exist """
    try:
        sql_create_runs_table = """ CREATE TABLE IF NOT EXISTS runs (
                                        id integer PRIMARY KEY,
                                        timestamp text NOT NULL,
                                        command text NOT NULL,
                                        result text NOT NULL,
                                        raw_args TEXT
                                    ); """
        c = conn.cursor()
        c.execute(sql_create_runs_table)
    except Error as e:
        logger.error("cannot create runs table: %s", e)


def add_run_record(conn, timestamp, command, result, raw_args):
    """
    Add a new CLI run into the runs table
    :param conn:
    :param timestamp: ISO timestamp of the run
    :param command: subcommand name, e.g. "classify"
    :param result: short verdict or value string
    :param raw_args: the argv joined by spaces
    :return: row id
    """
    sql = ''' INSERT INTO runs(timestamp,command,result,raw_args)
              VALUES(?,?,?,?) '''
    cur = conn.cursor()
    cur.execute(sql, (timestamp, command, result, raw_args))
    conn.commit()
    return cur.lastrowid


def _where(filter_text, search_query):
    conditions = []
    params = []
    if filter_text and filter_text != "All":
        conditions.append("command = ?")
        params.append(filter_text)
    if search_query:
        conditions.append("(CAST(id AS TEXT) LIKE ? OR timestamp LIKE ? OR result LIKE ? OR raw_args LIKE ?)")
        params.extend([f"%{search_query}%"] * 4)
    clause = " WHERE " + " AND ".join(conditions) if conditions else ""
    return clause, params


def get_all_records(conn, filter_text=None, search_query=None, sort_column="timestamp", sort_order="DESC",
                    limit=None):
    """
    Query rows in the runs table that match the filter (command) and search criteria.
    """
    cur = conn.cursor()
    clause, params = _where(filter_text, search_query)
    base_query = "SELECT id, timestamp, command, result, raw_args FROM runs" + clause

    if sort_column not in ALLOWED_SORT_COLUMNS:
        sort_column = "timestamp"
    if sort_order.upper() not in ["ASC", "DESC"]:
        sort_order = "DESC"
    # Urutan id sebagai pemutus seri untuk timestamp yang sama
    base_query += f" ORDER BY {sort_column} {sort_order}, id {sort_order}"
    if limit is not None:
        base_query += " LIMIT ?"
        params.append(int(limit))

    cur.execute(base_query, tuple(params))
    return cur.fetchall()


def get_record_by_id(conn, record_id):
    """
    Query a single row in the runs table by id
    :param conn: the Connection object
    :param record_id: id of the record to retrieve
    :return: a single row tuple or None
    """
    cur = conn.cursor()
    cur.execute("SELECT id, timestamp, command, result, raw_args FROM runs WHERE id = ?", (record_id,))
    return cur.fetchone()


def delete_record_by_id(conn, record_id):
    """
    Delete a record from the runs table by id
    :param conn: the Connection object
    :param record_id: id of the record to delete
    :return: number of rows affected
    """
    cur = conn.cursor()
    cur.execute('DELETE FROM runs WHERE id = ?', (record_id,))
    conn.commit()
    return cur.rowcount


def get_record_count(conn, filter_text=None, search_query=None):
    """
    Get the total number of runs, with optional filtering and searching.
    """
    cur = conn.cursor()
    clause, params = _where(filter_text, search_query)
    cur.execute("SELECT COUNT(*) FROM runs" + clause, tuple(params))
    return cur.fetchone()[0]


def get_distinct_commands(conn):
    """All subcommand names that appear in the runs table, sorted."""
    cur = conn.cursor()
    cur.execute("SELECT DISTINCT command FROM runs")
    return sorted(row[0] for row in cur.fetchall())


def history_frame(conn, filter_text=None, search_query=None, limit=None):
    """The matching runs as a pandas DataFrame, newest first."""
    rows = get_all_records(conn, filter_text, search_query, limit=limit)
    return pd.DataFrame(rows, columns=COLUMNS)


def initialize_database(db_file=None):
    """Create the database file and the runs table if needed."""
    conn = create_connection(db_file)
    if conn is None:
        logger.error("cannot create the history database connection")
        return
    try:
        create_table(conn)
        cursor = conn.cursor()
        cursor.execute("PRAGMA table_info(runs)")
        columns = [info[1] for info in cursor.fetchall()]
        if 'raw_args' not in columns:
            logger.info("migrating history database: adding raw_args column")
            cursor.execute("ALTER TABLE runs ADD COLUMN raw_args TEXT")
            conn.commit()
    except Error as e:
        logger.error("error during database migration: %s", e)
    finally:
        conn.close()
