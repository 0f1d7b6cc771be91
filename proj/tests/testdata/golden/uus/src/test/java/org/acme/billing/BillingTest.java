package org.acme.billing;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class BillingTest {
    private static final String ACCOUNT = "ACC-9";

    private Ledger ledger;
    private RateTable rates;
    private Billing billing;

    @Before
    public void setUp() {
        ledger = mock(Ledger.class);
        rates = mock(RateTable.class);
        billing = new Billing(ledger, rates);
        when(ledger.isFrozen(ACCOUNT)).thenReturn(false);
        when(ledger.balanceOf(ACCOUNT)).thenReturn(100);
        when(rates.feeFor(ACCOUNT)).thenReturn(3);
    }

    @Test
    public void chargesOpenAccount() {
        assertEquals(97, billing.charge(ACCOUNT));
    }

    @Test
    public void chargesTwice() {
        billing.charge(ACCOUNT);
        assertEquals(97, billing.charge(ACCOUNT));
    }
}
