#include <string.h>
#include <tee_internal_api.h>

static void report(TEE_Param p[4], uint32_t passwd)
{
    snprintf(p[2].memref.buffer, p[2].memref.size, "state %u", passwd);
}

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    report(params, current_passwd());
    return TEE_SUCCESS;
}
