/* C boundary shim.
 *
 * Exports the luandri_* symbols declared in include/luandri.h and forwards
 * each call to luandri.boundary, which returns (status, value) pairs and
 * never raises. The shim owns exactly two concerns: runtime bootstrap and
 * marshalling between the flat structs and Python objects.
 *
 * Bootstrap: when loaded into a process that already runs CPython (the
 * normal case for ctypes users) the live interpreter is reused. When a
 * foreign host dlopens the library, a private interpreter is initialized on
 * first use; LUANDRI_PYTHONPATH (colon-separated) is prepended to sys.path
 * so the package can be found without installation.
 *
 * Every string pointer handed out points into a Python bytes object kept
 * alive by luandri.boundary until the owning result set (or the error slot)
 * is replaced or destroyed.
 */

#define PY_SSIZE_T_CLEAN
#include <Python.h>

#include <pthread.h>
#include <stdlib.h>
#include <string.h>

#include "luandri.h"

static pthread_mutex_t g_lock = PTHREAD_MUTEX_INITIALIZER;
static PyObject *g_boundary = NULL;
static PyObject *g_error_holder = NULL; /* keeps the last_error bytes alive */

static const char g_empty[] = "";

static void push_env_paths(void)
{
    const char *raw = getenv("LUANDRI_PYTHONPATH");
    PyObject *syspath;
    char *dup, *seg, *save = NULL;
    int pos = 0;

    if (raw == NULL || raw[0] == '\0')
        return;
    syspath = PySys_GetObject("path"); /* borrowed */
    if (syspath == NULL) {
        PyErr_Clear();
        return;
    }
    dup = strdup(raw);
    if (dup == NULL)
        return;
    for (seg = strtok_r(dup, ":", &save); seg != NULL; seg = strtok_r(NULL, ":", &save)) {
        PyObject *entry;
        if (seg[0] == '\0')
            continue;
        entry = PyUnicode_DecodeFSDefault(seg);
        if (entry == NULL) {
            PyErr_Clear();
            continue;
        }
        if (PyList_Insert(syspath, pos, entry) == 0)
            pos++;
        else
            PyErr_Clear();
        Py_DECREF(entry);
    }
    free(dup);
}

/* Import luandri.boundary exactly once; 0 on success. */
static int ensure_runtime(void)
{
    int rc = 0;

    pthread_mutex_lock(&g_lock);
    if (g_boundary == NULL) {
        int fresh = 0;
        PyGILState_STATE gil;

        if (!Py_IsInitialized()) {
            Py_InitializeEx(0);
            fresh = 1;
        }
        gil = PyGILState_Ensure();
        push_env_paths();
        g_boundary = PyImport_ImportModule("luandri.boundary");
        if (g_boundary == NULL) {
            PyErr_Clear();
            rc = -1;
        }
        PyGILState_Release(gil);
        if (fresh) {
            /* Release the GIL taken by initialization so any thread may
             * enter through PyGILState_Ensure later. The thread state is
             * intentionally kept for the life of the process. */
            (void)PyEval_SaveThread();
        }
    }
    pthread_mutex_unlock(&g_lock);
    return rc;
}

/* Report a failure detected on the C side (NULL pointers and the like). */
static luandri_status c_fail(luandri_status st, const char *msg,
                             luandri_env env, int have_env)
{
    PyGILState_STATE gil;
    PyObject *r;

    if (ensure_runtime() != 0)
        return st;
    gil = PyGILState_Ensure();
    if (have_env)
        r = PyObject_CallMethod(g_boundary, "record_error", "sK", msg,
                                (unsigned long long)env);
    else
        r = PyObject_CallMethod(g_boundary, "record_error", "s", msg);
    if (r == NULL)
        PyErr_Clear();
    Py_XDECREF(r);
    PyGILState_Release(gil);
    return st;
}

/* Call a boundary function. Steals args (tolerates NULL). Parses the
 * (status, value) pair; on LUANDRI_OK stores a new reference to value in
 * *out_value when requested. GIL must be held. */
static luandri_status invoke(const char *name, PyObject *args,
                             PyObject **out_value)
{
    PyObject *fn, *pair, *status_obj;
    long code;
    luandri_status st;

    if (out_value != NULL)
        *out_value = NULL;
    if (args == NULL) {
        PyErr_Clear();
        return LUANDRI_INTERNAL_ERROR;
    }
    fn = PyObject_GetAttrString(g_boundary, name);
    if (fn == NULL) {
        PyErr_Clear();
        Py_DECREF(args);
        return LUANDRI_INTERNAL_ERROR;
    }
    pair = PyObject_CallObject(fn, args);
    Py_DECREF(fn);
    Py_DECREF(args);
    if (pair == NULL) {
        PyErr_Clear();
        return LUANDRI_INTERNAL_ERROR;
    }
    if (!PyTuple_Check(pair) || PyTuple_GET_SIZE(pair) != 2) {
        Py_DECREF(pair);
        return LUANDRI_INTERNAL_ERROR;
    }
    status_obj = PyTuple_GET_ITEM(pair, 0);
    code = PyLong_AsLong(status_obj);
    if (code == -1 && PyErr_Occurred()) {
        PyErr_Clear();
        Py_DECREF(pair);
        return LUANDRI_INTERNAL_ERROR;
    }
    st = (luandri_status)code;
    if (st == LUANDRI_OK && out_value != NULL) {
        *out_value = PyTuple_GET_ITEM(pair, 1);
        Py_INCREF(*out_value);
    }
    Py_DECREF(pair);
    return st;
}

luandri_status luandri_env_create(luandri_env *out_env)
{
    PyGILState_STATE gil;
    PyObject *val = NULL;
    luandri_status st;

    if (out_env == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "env_create: out_env is NULL", 0, 0);
    *out_env = 0;
    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("create_env", PyTuple_New(0), &val);
    if (st == LUANDRI_OK) {
        unsigned long long h = PyLong_AsUnsignedLongLong(val);
        if (h == (unsigned long long)-1 && PyErr_Occurred()) {
            PyErr_Clear();
            st = LUANDRI_INTERNAL_ERROR;
        } else {
            *out_env = (luandri_env)h;
        }
        Py_DECREF(val);
    }
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_env_destroy(luandri_env env)
{
    PyGILState_STATE gil;
    luandri_status st;

    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("destroy_env", Py_BuildValue("(K)", (unsigned long long)env), NULL);
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_env_add_index(luandri_env env, const char *path)
{
    PyGILState_STATE gil;
    luandri_status st;

    if (path == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "env_add_index: path is NULL", env, 1);
    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("add_index",
                Py_BuildValue("(Ky)", (unsigned long long)env, path), NULL);
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_env_run_query(luandri_env env,
                                     const luandri_request *request,
                                     luandri_results *out_results)
{
    PyGILState_STATE gil;
    PyObject *query = NULL, *doc_ids = NULL, *stopwords = NULL;
    PyObject *args, *val = NULL;
    luandri_status st;
    uint64_t i;

    if (out_results != NULL)
        *out_results = 0;
    if (request == NULL || out_results == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT,
                      "env_run_query: request and out_results must be non-NULL", env, 1);
    if (request->query == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "env_run_query: query is NULL", env, 1);
    if (request->reserved != 0)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "env_run_query: reserved must be 0", env, 1);
    if (request->doc_ids_count > 0 && request->doc_ids == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT,
                      "env_run_query: doc_ids is NULL but doc_ids_count > 0", env, 1);
    if (request->stopwords_count > 0 && request->stopwords == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT,
                      "env_run_query: stopwords is NULL but stopwords_count > 0", env, 1);
    if (request->doc_ids_count > (uint64_t)PY_SSIZE_T_MAX ||
        request->stopwords_count > (uint64_t)PY_SSIZE_T_MAX)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "env_run_query: count overflows", env, 1);

    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();

    query = PyBytes_FromString(request->query);
    if (request->doc_ids_count > 0) {
        doc_ids = PyList_New((Py_ssize_t)request->doc_ids_count);
        for (i = 0; doc_ids != NULL && i < request->doc_ids_count; i++) {
            PyObject *v = PyLong_FromLongLong(request->doc_ids[i]);
            if (v == NULL) {
                Py_CLEAR(doc_ids);
                break;
            }
            PyList_SET_ITEM(doc_ids, (Py_ssize_t)i, v);
        }
    } else {
        doc_ids = Py_None;
        Py_INCREF(Py_None);
    }
    if (request->stopwords_count > 0) {
        stopwords = PyList_New((Py_ssize_t)request->stopwords_count);
        for (i = 0; stopwords != NULL && i < request->stopwords_count; i++) {
            PyObject *w = NULL;
            if (request->stopwords[i] != NULL)
                w = PyBytes_FromString(request->stopwords[i]);
            if (w == NULL) {
                Py_CLEAR(stopwords);
                break;
            }
            PyList_SET_ITEM(stopwords, (Py_ssize_t)i, w);
        }
    } else {
        stopwords = Py_None;
        Py_INCREF(Py_None);
    }

    if (query == NULL || doc_ids == NULL || stopwords == NULL) {
        Py_XDECREF(query);
        Py_XDECREF(doc_ids);
        Py_XDECREF(stopwords);
        PyErr_Clear();
        PyGILState_Release(gil);
        return c_fail(LUANDRI_INVALID_ARGUMENT,
                      "env_run_query: could not marshal the request", env, 1);
    }

    /* N transfers each reference into the tuple. */
    args = Py_BuildValue("(KNNNi)", (unsigned long long)env, query, doc_ids,
                         stopwords, (int)request->results_requested);
    st = invoke("run_query", args, &val);
    if (st == LUANDRI_OK) {
        unsigned long long h = PyLong_AsUnsignedLongLong(val);
        if (h == (unsigned long long)-1 && PyErr_Occurred()) {
            PyErr_Clear();
            st = LUANDRI_INTERNAL_ERROR;
        } else {
            *out_results = (luandri_results)h;
        }
        Py_DECREF(val);
    }
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_results_count(luandri_results results, uint64_t *out_count)
{
    PyGILState_STATE gil;
    PyObject *val = NULL;
    luandri_status st;

    if (out_count == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "results_count: out_count is NULL", 0, 0);
    *out_count = 0;
    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("results_count",
                Py_BuildValue("(K)", (unsigned long long)results), &val);
    if (st == LUANDRI_OK) {
        unsigned long long n = PyLong_AsUnsignedLongLong(val);
        if (n == (unsigned long long)-1 && PyErr_Occurred()) {
            PyErr_Clear();
            st = LUANDRI_INTERNAL_ERROR;
        } else {
            *out_count = (uint64_t)n;
        }
        Py_DECREF(val);
    }
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_results_get(luandri_results results, uint64_t index,
                                   luandri_result *out_result)
{
    PyGILState_STATE gil;
    PyObject *row = NULL;
    luandri_status st;

    if (out_result == NULL)
        return c_fail(LUANDRI_INVALID_ARGUMENT, "results_get: out_result is NULL", 0, 0);
    out_result->docid = 0;
    out_result->document_name = g_empty;
    out_result->snippet = g_empty;
    out_result->score = 0.0;
    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("results_get",
                Py_BuildValue("(KK)", (unsigned long long)results,
                              (unsigned long long)index),
                &row);
    if (st == LUANDRI_OK) {
        st = LUANDRI_INTERNAL_ERROR;
        if (PyTuple_Check(row) && PyTuple_GET_SIZE(row) == 4 &&
            PyBytes_Check(PyTuple_GET_ITEM(row, 1)) &&
            PyBytes_Check(PyTuple_GET_ITEM(row, 2))) {
            long long docid = PyLong_AsLongLong(PyTuple_GET_ITEM(row, 0));
            double score = PyFloat_AsDouble(PyTuple_GET_ITEM(row, 3));
            if (!PyErr_Occurred()) {
                /* The registry in luandri.boundary owns the row until the
                 * result set is destroyed, so these pointers outlive our
                 * reference. */
                out_result->docid = (int64_t)docid;
                out_result->document_name = PyBytes_AsString(PyTuple_GET_ITEM(row, 1));
                out_result->snippet = PyBytes_AsString(PyTuple_GET_ITEM(row, 2));
                out_result->score = score;
                st = LUANDRI_OK;
            } else {
                PyErr_Clear();
            }
        }
        Py_DECREF(row);
    }
    PyGILState_Release(gil);
    return st;
}

luandri_status luandri_results_destroy(luandri_results results)
{
    PyGILState_STATE gil;
    luandri_status st;

    if (ensure_runtime() != 0)
        return LUANDRI_INTERNAL_ERROR;
    gil = PyGILState_Ensure();
    st = invoke("destroy_results",
                Py_BuildValue("(K)", (unsigned long long)results), NULL);
    PyGILState_Release(gil);
    return st;
}

const char *luandri_last_error(luandri_env env)
{
    PyGILState_STATE gil;
    PyObject *data;
    const char *msg = g_empty;

    if (ensure_runtime() != 0)
        return "luandri: could not initialize the embedded runtime "
               "(is luandri importable? set LUANDRI_PYTHONPATH)";
    gil = PyGILState_Ensure();
    data = PyObject_CallMethod(g_boundary, "last_error_bytes", "K",
                               (unsigned long long)env);
    if (data != NULL && PyBytes_Check(data)) {
        msg = PyBytes_AsString(data);
        /* Keep the bytes alive until the next last_error call. */
        Py_XDECREF(g_error_holder);
        g_error_holder = data;
    } else {
        PyErr_Clear();
        Py_XDECREF(data);
    }
    PyGILState_Release(gil);
    return msg;
}

/* Python extension entry point. Importing luandri._capi does not expose
 * functions at the Python level; the module exists so the build system
 * produces and ships the shared object whose luandri_* exports form the
 * C boundary. */
static struct PyModuleDef capi_module = {
    PyModuleDef_HEAD_INIT,
    "luandri._capi",
    "Shared library backing the C boundary; see include/luandri.h.",
    -1,
    NULL,
};

PyMODINIT_FUNC PyInit__capi(void)
{
    return PyModule_Create(&capi_module);
}
